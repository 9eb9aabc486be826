#!/usr/bin/env python3
# Copyright 2026 The tbsig Authors.
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Reference generator for challenge_vectors.json.

Independent of the C++ code: affine secp256k1 arithmetic in plain Python,
hashlib SHA-256, and Python integers for every reduction. Re-run with
`python3 gen_vectors.py > challenge_vectors.json`.
"""
import hashlib
import json

P = 2**256 - 2**32 - 977
N = 0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEBAAEDCE6AF48A03BBFD25E8CD0364141
GX = 0x79BE667EF9DCBBAC55A06295CE870B07029BFCDB2DCE28D959F2815B16F81798
GY = 0x483ADA7726A3C4655DA4FBFC0E1108A8FD17B448A68554199C47D08FFB10D4B8

TOY_P, TOY_Q, TOY_G = 23, 11, 2


def ec_add(a, b):
    if a is None:
        return b
    if b is None:
        return a
    if a[0] == b[0] and (a[1] + b[1]) % P == 0:
        return None
    if a == b:
        lam = 3 * a[0] * a[0] * pow(2 * a[1], -1, P) % P
    else:
        lam = (b[1] - a[1]) * pow(b[0] - a[0], -1, P) % P
    x = (lam * lam - a[0] - b[0]) % P
    return (x, (lam * (a[0] - x) - a[1]) % P)


def ec_mul(k, pt=(GX, GY)):
    acc = None
    while k:
        if k & 1:
            acc = ec_add(acc, pt)
        pt = ec_add(pt, pt)
        k >>= 1
    return acc


def curve_ser(pt):
    if pt is None:
        return bytes(33)
    return bytes([2 + (pt[1] & 1)]) + pt[0].to_bytes(32, "big")


def toy_ser(r):
    return r.to_bytes(8, "big")


def preimage(r_ser, y_ser, msg, te=None, flag=None):
    tag = b"TBSIG/v1/vanilla" if te is None else b"TBSIG/v1/timebound"
    out = tag + r_ser + y_ser + len(msg).to_bytes(8, "big") + msg
    if te is not None:
        out += te.to_bytes(8, "big") + bytes([flag])
    return out


def backend(name):
    if name == "toy":
        return TOY_Q, lambda k: toy_ser(pow(TOY_G, k, TOY_P))
    return N, lambda k: curve_ser(ec_mul(k))


def challenge_cases():
    cases = []
    for name in ("toy", "curve"):
        q, ser = backend(name)
        for r_log, y_log, msg, te, flag in [
            (3, 7, b"a", 100, 1),
            (3, 7, b"a", 100, 0),
            (3, 7, b"a", 101, 1),
            (3, 7, b"a", None, None),
            (5, 9, b"", 0, 1),
            (4, 2, b"transfer 10 to bob", 2**64 - 1, 1),
        ]:
            pre = preimage(ser(r_log), ser(y_log), msg, te, flag)
            digest = hashlib.sha256(pre).digest()
            case = {
                "backend": name,
                "r_log": r_log,
                "y_log": y_log,
                "R": ser(r_log).hex(),
                "Y": ser(y_log).hex(),
                "message": msg.hex(),
                "variant": "vanilla" if te is None else "timebound",
                "preimage": pre.hex(),
                "digest": digest.hex(),
                "scalar": str(int.from_bytes(digest, "big") % q),
            }
            if te is not None:
                case["t_e"] = te
                case["flag"] = flag
            cases.append(case)
    return cases


def signature_cases():
    cases = []
    for name in ("toy", "curve"):
        q, ser = backend(name)
        secret, nonce, msg, te = 7, 3, b"a", 100
        r_ser, y_ser = ser(nonce), ser(secret)
        c = int.from_bytes(hashlib.sha256(preimage(r_ser, y_ser, msg, te, 1)).digest(), "big") % q
        z = (nonce + secret * c) % q
        wire = r_ser + z.to_bytes(32, "big") + te.to_bytes(8, "big")
        cases.append({
            "backend": name,
            "secret": secret,
            "nonce": nonce,
            "message": msg.hex(),
            "t_e": te,
            "Y": y_ser.hex(),
            "R": r_ser.hex(),
            "c": str(c),
            "z": str(z),
            "wire": wire.hex(),
        })
    return cases


if __name__ == "__main__":
    print(json.dumps({
        "layout": "tag || ser(R) || ser(Y) || u64be(len(m)) || m [|| u64be(t_e) || u8(flag)]; "
                  "scalar = int_be(SHA-256(preimage)) mod q",
        "challenges": challenge_cases(),
        "signatures": signature_cases(),
    }, indent=2))
