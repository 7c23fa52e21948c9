#!/usr/bin/env python3
"""Builds the character table fixture for the normalizer group of an
extraspecial 3-group of order 3^5 inside SL9(C).

The group is G = E : S where E is extraspecial of order 3^5 and exponent 3
and S = Sp4(F3) (order 51840) acts through the symplectic structure on
E/Z(E) = F3^4.  The table is assembled by Clifford theory:

  family a:  inflations of Irr(S) through G -> S,
  family b:  characters induced from A:T, where A = E/Z(E) and T is the
             stabilizer in S of a fixed nonzero linear character of A,
  family c:  W (x) inflations of Irr(S), where W is the nine-dimensional
             representation extending the faithful central character
             (built exactly over Q(omega) from the intertwining relations),
  family c': the complex conjugates of family c.

Irr(S) and Irr(T) are computed with Dixon's method (class multiplication
matrices, eigenvector splitting mod p, root-of-unity lifting).  The output
is written in the toolkit's table JSON format and is fully re-validated by
the C++ side (orthogonality, degree sums, power maps).

Usage: python3 export_table.py [--cache DIR] [--out FILE]
"""

import argparse
import json
import math
import os
import sys
import time
from fractions import Fraction

import numpy as np

P3 = 3

# ---------------------------------------------------------------------------
# F3 matrix helpers


def mat_code(m):
    """Pack a 4x4 F3 matrix (uint8) into an integer (base 3, row major)."""
    code = 0
    for v in m.reshape(-1)[::-1]:
        code = code * 3 + int(v)
    return code


def mats_codes(ms):
    """Vectorized mat_code over a stack (n,4,4)."""
    flat = ms.reshape(len(ms), 16).astype(np.int64)
    powers = 3 ** np.arange(16, dtype=np.int64)
    return flat @ powers


def mat_from_code(code):
    out = np.zeros(16, dtype=np.uint8)
    for i in range(16):
        out[i] = code % 3
        code //= 3
    return out.reshape(4, 4)


def mmul(a, b):
    return (a.astype(np.int64) @ b.astype(np.int64) % 3).astype(np.uint8)


def minv(a):
    """Inverse of a 4x4 matrix over F3 by Gauss-Jordan."""
    m = a.astype(np.int64).copy()
    inv = np.eye(4, dtype=np.int64)
    for col in range(4):
        piv = next(r for r in range(col, 4) if m[r, col] % 3 != 0)
        if piv != col:
            m[[col, piv]] = m[[piv, col]]
            inv[[col, piv]] = inv[[piv, col]]
        scale = pow(int(m[col, col]), -1, 3)
        m[col] = m[col] * scale % 3
        inv[col] = inv[col] * scale % 3
        for r in range(4):
            if r != col and m[r, col] % 3:
                f = m[r, col] % 3
                m[r] = (m[r] - f * m[col]) % 3
                inv[r] = (inv[r] - f * inv[col]) % 3
    return (inv % 3).astype(np.uint8)


# symplectic form Omega(v, w) = v^T JMAT w; matches the commutator pairing of
# the cocycle c(v, w) = b_v . a_w below, where v = (a0, a1, b0, b1)
JMAT = np.array([[0, 0, 2, 0], [0, 0, 0, 2], [1, 0, 0, 0], [0, 1, 0, 0]], dtype=np.uint8)


def is_symplectic(m):
    return np.array_equal(mmul(mmul(m.T, JMAT), m), JMAT)


def matrix_order(m):
    x = m.copy()
    identity = np.eye(4, dtype=np.uint8)
    for k in range(1, 100):
        if np.array_equal(x, identity):
            return k
        x = mmul(x, m)
    raise RuntimeError("order > 100")


def sp4_generator_candidates(rng):
    """Random symplectic matrices built from elementary symplectic moves."""
    # transvections t_v: x -> x + Omega(x, v) v are symplectic for any v
    def transvection(v, c=1):
        # x -> x + c * Omega(x, v) v  with Omega(x, v) = (Jv) . x
        v = np.asarray(v, dtype=np.int64)
        jv = JMAT.astype(np.int64) @ v % 3
        t = (np.eye(4, dtype=np.int64) + c * np.outer(v, jv)) % 3
        return t.astype(np.uint8)

    while True:
        m = np.eye(4, dtype=np.uint8)
        for _ in range(rng.integers(3, 9)):
            v = rng.integers(0, 3, size=4).astype(np.int64)
            if not v.any():
                continue
            m = mmul(m, transvection(v, int(rng.integers(1, 3))))
        if is_symplectic(m):
            yield m


def find_generators(cache_dir):
    """Two order-5 elements generating the whole Sp4(F3)."""
    path = os.path.join(cache_dir, "sp4_gens.npy")
    if os.path.exists(path):
        return np.load(path)
    rng = np.random.default_rng(20240811)
    cand = sp4_generator_candidates(rng)
    fives = []
    while len(fives) < 40:
        m = next(cand)
        if matrix_order(m) == 5:
            fives.append(m)
    for i in range(len(fives)):
        for j in range(i + 1, len(fives)):
            size = bfs_size_estimate(fives[i], fives[j], limit=60000)
            if size == 51840:
                gens = np.stack([fives[i], fives[j]])
                np.save(path, gens)
                return gens
    raise RuntimeError("no generating order-5 pair found")


def bfs_size_estimate(g1, g2, limit):
    seen = {mat_code(np.eye(4, dtype=np.uint8))}
    frontier = [np.eye(4, dtype=np.uint8)]
    while frontier:
        nxt = []
        for m in frontier:
            for g in (g1, g2):
                prod = mmul(m, g)
                c = mat_code(prod)
                if c not in seen:
                    seen.add(c)
                    nxt.append(prod)
                    if len(seen) > limit:
                        return len(seen)
        frontier = nxt
    return len(seen)


def enumerate_group(gens, cache_dir):
    """BFS enumeration with parent words.

    Returns (mats, code_to_idx, parent, parent_gen) where parent_gen[i] is
    the generator index used last (element = parent * gen), -1 at identity.
    """
    mats_path = os.path.join(cache_dir, "sp4_mats.npy")
    parent_path = os.path.join(cache_dir, "sp4_parent.npy")
    pgen_path = os.path.join(cache_dir, "sp4_pgen.npy")
    if all(os.path.exists(p) for p in (mats_path, parent_path, pgen_path)):
        mats = np.load(mats_path)
        parent = np.load(parent_path)
        pgen = np.load(pgen_path)
    else:
        mats = [np.eye(4, dtype=np.uint8)]
        parent = [-1]
        pgen = [-1]
        index = {mat_code(mats[0]): 0}
        head = 0
        while head < len(mats):
            m = mats[head]
            for gi, g in enumerate(gens):
                prod = mmul(m, g)
                c = mat_code(prod)
                if c not in index:
                    index[c] = len(mats)
                    mats.append(prod)
                    parent.append(head)
                    pgen.append(gi)
            head += 1
        mats = np.stack(mats)
        parent = np.array(parent, dtype=np.int64)
        pgen = np.array(pgen, dtype=np.int64)
        np.save(mats_path, mats)
        np.save(parent_path, parent)
        np.save(pgen_path, pgen)
    codes = mats_codes(mats)
    code_to_idx = np.full(3**16, -1, dtype=np.int64)
    code_to_idx[codes] = np.arange(len(mats))
    return mats, code_to_idx, parent, pgen


def word_of(idx, parent, pgen):
    word = []
    while parent[idx] != -1:
        word.append(int(pgen[idx]))
        idx = int(parent[idx])
    return word[::-1]


def conjugacy_classes(mats, code_to_idx, gens):
    """Element -> class index, via orbit propagation under conjugation."""
    n = len(mats)
    label = np.arange(n, dtype=np.int64)
    perms = []
    for g in gens:
        ginv = minv(g)
        conj = np.einsum("ij,njk,kl->nil", ginv.astype(np.int64), mats.astype(np.int64),
                         g.astype(np.int64)) % 3
        perms.append(code_to_idx[mats_codes(conj.astype(np.uint8))])
    while True:
        before = label
        for p in perms:
            label = np.minimum(label, label[p])
        label = np.minimum(label, label[label])
        if np.array_equal(label, before):
            break
    reps, class_of, sizes = np.unique(label, return_inverse=True, return_counts=True)
    return class_of, reps, sizes


def class_data(mats, code_to_idx, class_of, reps):
    orders = []
    for r in reps:
        orders.append(matrix_order(mats[r]))
    orders = np.array(orders, dtype=np.int64)
    inverse_class = []
    for r in reps:
        inverse_class.append(int(class_of[code_to_idx[mat_code(minv(mats[r]))]]))
    power_class = {}

    def pc(ci, k):
        m = mats[reps[ci]]
        x = np.eye(4, dtype=np.uint8)
        for _ in range(k):
            x = mmul(x, m)
        return int(class_of[code_to_idx[mat_code(x)]])

    return orders, np.array(inverse_class, dtype=np.int64), pc


# ---------------------------------------------------------------------------
# Dixon's method (generic over a finite group given by class data)


def small_primes(limit):
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, int(limit**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = False
    return np.nonzero(sieve)[0].tolist()


def pick_dixon_prime(exponent, min_p):
    p = exponent + 1
    while True:
        if p > min_p and p % exponent == 1 and all(p % q for q in range(2, int(p**0.5) + 1)):
            return p
        p += exponent


def primitive_root(p):
    factors = []
    n = p - 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        factors.append(n)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise RuntimeError("no primitive root")


def charpoly_mod(mat, p):
    """Characteristic polynomial mod p via Hessenberg reduction."""
    n = mat.shape[0]
    h = mat.astype(np.int64).copy() % p
    for col in range(n - 2):
        piv = None
        for r in range(col + 1, n):
            if h[r, col] % p:
                piv = r
                break
        if piv is None:
            continue
        if piv != col + 1:
            h[[col + 1, piv]] = h[[piv, col + 1]]
            h[:, [col + 1, piv]] = h[:, [piv, col + 1]]
        inv = pow(int(h[col + 1, col]), -1, p)
        for r in range(col + 2, n):
            if h[r, col] % p:
                f = h[r, col] * inv % p
                h[r] = (h[r] - f * h[col + 1]) % p
                h[:, col + 1] = (h[:, col + 1] + f * h[:, r]) % p
    # char polys of leading Hessenberg minors
    polys = [np.array([1], dtype=np.int64)]  # p_0 = 1
    for k in range(1, n + 1):
        # p_k(x) = (x - h[k-1,k-1]) p_{k-1}(x) - sum over trailing products
        term = np.zeros(k + 1, dtype=np.int64)
        term[1:] += polys[k - 1]
        term[:-1] -= h[k - 1, k - 1] * polys[k - 1]
        prod = 1
        for i in range(k - 1, 0, -1):
            prod = prod * h[i, i - 1] % p
            coeff = prod * h[i - 1, k - 1] % p
            term[: len(polys[i - 1])] -= coeff * polys[i - 1]
        polys.append(term % p)
    return polys[n] % p


def poly_roots_mod(poly, p):
    xs = np.arange(p, dtype=np.int64)
    vals = np.zeros(p, dtype=np.int64)
    for c in poly[::-1]:
        vals = (vals * xs + int(c)) % p
    return np.nonzero(vals == 0)[0].tolist()


def kernel_mod(mat, p):
    """Basis of the kernel of mat over F_p (rows are basis vectors)."""
    m = mat.astype(np.int64).copy() % p
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        piv = None
        for rr in range(r, rows):
            if m[rr, c] % p:
                piv = rr
                break
        if piv is None:
            continue
        m[[r, piv]] = m[[piv, r]]
        m[r] = m[r] * pow(int(m[r, c]), -1, p) % p
        for rr in range(rows):
            if rr != r and m[rr, c] % p:
                m[rr] = (m[rr] - m[rr, c] * m[r]) % p
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-m[i, f]) % p
        basis.append(v % p)
    return basis


def solve_in_basis(V, W, p):
    """R with W = R V over F_p (rows of W in the row space of V)."""
    d, n = V.shape
    aug = np.concatenate([V.T, W.T], axis=1) % p  # n x (d + rows(W))
    m = aug.astype(np.int64).copy()
    r = 0
    pivots = []
    for c in range(d):
        piv = None
        for rr in range(r, n):
            if m[rr, c] % p:
                piv = rr
                break
        if piv is None:
            continue
        m[[r, piv]] = m[[piv, r]]
        m[r] = m[r] * pow(int(m[r, c]), -1, p) % p
        for rr in range(n):
            if rr != r and m[rr, c] % p:
                m[rr] = (m[rr] - m[rr, c] * m[r]) % p
        pivots.append(c)
        r += 1
    if len(pivots) != d:
        raise RuntimeError("basis rows not independent")
    # after elimination the first d columns are identity on pivot rows
    R = m[:d, d:].T % p
    return R


def split_spaces(class_mats, k, p):
    """Common one-dimensional eigenspaces of the class multiplication
    matrices B_i[j, l] = a[i, j, l] over F_p."""
    spaces = [np.eye(k, dtype=np.int64)]
    for i in range(1, k):
        B = class_mats[i] % p  # acts on column vectors indexed by l
        done = []
        for V in spaces:
            if V.shape[0] == 1:
                done.append(V)
                continue
            W = V @ B.T % p
            R = solve_in_basis(V, W, p)
            cp = charpoly_mod(R, p)
            roots = poly_roots_mod(cp, p)
            consumed = 0
            for lam in roots:
                ker = kernel_mod((R - lam * np.eye(R.shape[0], dtype=np.int64)) % p, p)
                if not ker:
                    continue
                K = np.stack(ker) % p
                done.append(K @ V % p)
                consumed += len(ker)
            if consumed != V.shape[0]:
                raise RuntimeError("eigenspaces do not exhaust the space")
        spaces = done
        if all(V.shape[0] == 1 for V in spaces):
            break
    if not all(V.shape[0] == 1 for V in spaces):
        raise RuntimeError("class matrices failed to separate characters")
    return [V[0] % p for V in spaces]


def sqrt_mod(a, p, bound):
    """The square root of a mod p that lies in 1..bound (unique when
    2 * bound < p)."""
    for d in range(1, bound + 1):
        if d * d % p == a % p:
            return d
    raise RuntimeError("no square root in range")


def dixon_characters(class_mats, sizes, orders, inverse_class, power_class_fn, order_G):
    """Exact irreducible characters via Dixon's method.

    class_mats[i][j, l] = a_{ijl} = #{(x, y) in C_i x C_j : xy = z_l}.
    Returns rows of per-class cyclotomic values as dicts
    {exponent: integer} over zeta_{order of the class}.
    """
    k = len(sizes)
    exponent = math.lcm(*orders.tolist())
    min_p = 2 * int(math.isqrt(order_G)) + 2
    p = pick_dixon_prime(int(exponent), min_p)
    z = primitive_root(p)

    eigvecs = split_spaces(class_mats, k, p)
    assert len(eigvecs) == k

    inv_sizes = np.array([pow(int(s), -1, p) for s in sizes], dtype=np.int64)
    inv_orderG = pow(order_G % p, -1, p)
    rows = []
    for w in eigvecs:
        if w[0] % p == 0:
            raise RuntimeError("eigenvector with vanishing identity coordinate")
        w = w * pow(int(w[0]), -1, p) % p  # now w_l = omega_l(chi) mod p
        s = 0
        for l in range(k):
            s = (s + w[l] * w[inverse_class[l]] % p * inv_sizes[l]) % p
        inv_deg_sq = s * inv_orderG % p
        deg_sq = pow(int(inv_deg_sq), -1, p)
        deg = sqrt_mod(deg_sq, p, int(math.isqrt(order_G)) + 1)
        # chi(g_l) mod p
        chi_mod = [int(w[l]) * deg % p * int(inv_sizes[l]) % p for l in range(k)]
        rows.append((deg, chi_mod))

    # sanity: degrees square-sum to the group order
    assert sum(d * d for d, _ in rows) == order_G, [d for d, _ in rows]

    # lift each value chi(g) = sum_j n_j zeta_o^j via the multiplicity formula
    # n_j = (1/o) sum_t chi(g^t) theta^{-jt} with theta = z^{(p-1)/o}
    power_cache = {}
    lifted = []
    for deg, chi_mod in rows:
        row = []
        for c in range(k):
            o = int(orders[c])
            if o == 1:
                row.append({0: deg})
                continue
            if c not in power_cache:
                power_cache[c] = [power_class_fn(c, t) for t in range(o)]
            powers = power_cache[c]
            theta = pow(z, (p - 1) // o, p)
            inv_o = pow(o, -1, p)
            value = {}
            for j in range(o):
                acc = 0
                for t in range(o):
                    acc = (acc + chi_mod[powers[t]] * pow(theta, (-j * t) % (p - 1), p)) % p
                n_j = acc * inv_o % p
                if n_j >= p // 2:
                    raise RuntimeError("negative root multiplicity; lift failed")
                if n_j:
                    value[j] = int(n_j)
            if sum(value.values()) != deg:
                raise RuntimeError("root multiplicities do not sum to the degree")
            row.append(value)
        lifted.append(row)
    return lifted


# ---------------------------------------------------------------------------
# minimal exact cyclotomic arithmetic (values as {exponent: Fraction} over a
# fixed modulus; canonical reduction only where equality tests are needed)


def cyclotomic_poly_int(n, _cache={}):
    if n in _cache:
        return _cache[n]
    for d in range(1, n + 1):
        if n % d or d in _cache:
            continue
        num = [0] * (d + 1)
        num[0], num[d] = -1, 1
        for e in range(1, d):
            if d % e:
                continue
            phi_e = _cache[e]
            quot = [0] * (len(num) - len(phi_e) + 1)
            for i in range(len(quot) - 1, -1, -1):
                c = num[i + len(phi_e) - 1]
                quot[i] = c
                if c:
                    for jj in range(len(phi_e)):
                        num[i + jj] -= c * phi_e[jj]
            num = quot
        _cache[d] = num
    return _cache[n]


class Cyc:
    """Sum of rational multiples of roots of unity, tracked over modulus n."""

    __slots__ = ("n", "c")

    def __init__(self, n=1, c=None):
        self.n = n
        self.c = dict(c or {})

    @staticmethod
    def integer(v):
        return Cyc(1, {0: Fraction(v)} if v else {})

    @staticmethod
    def root(n, k, mult=1):
        return Cyc(n, {k % n: Fraction(mult)})

    @staticmethod
    def from_dict(n, d):
        return Cyc(n, {k % n: Fraction(v) for k, v in d.items() if v})

    def lift(self, m):
        assert m % self.n == 0
        step = m // self.n
        return Cyc(m, {k * step: v for k, v in self.c.items()})

    def __add__(self, other):
        m = math.lcm(self.n, other.n)
        a, b = self.lift(m), other.lift(m)
        out = dict(a.c)
        for k, v in b.c.items():
            out[k] = out.get(k, Fraction(0)) + v
            if not out[k]:
                del out[k]
        return Cyc(m, out)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Cyc(self.n, {})
            return Cyc(self.n, {k: v * other for k, v in self.c.items()})
        m = math.lcm(self.n, other.n)
        a, b = self.lift(m), other.lift(m)
        out = {}
        for k1, v1 in a.c.items():
            for k2, v2 in b.c.items():
                k = (k1 + k2) % m
                out[k] = out.get(k, Fraction(0)) + v1 * v2
        return Cyc(m, {k: v for k, v in out.items() if v})

    def conj(self):
        return Cyc(self.n, {(-k) % self.n: v for k, v in self.c.items()})

    def canonical(self):
        """Coefficient vector modulo the n-th cyclotomic polynomial."""
        phi = cyclotomic_poly_int(self.n)
        deg = len(phi) - 1
        coeffs = [Fraction(0)] * self.n if self.n > deg else [Fraction(0)] * (deg + 1)
        for k, v in self.c.items():
            coeffs[k] += v
        for i in range(len(coeffs) - 1, deg - 1, -1):
            c = coeffs[i]
            if not c:
                continue
            coeffs[i] = Fraction(0)
            for jj in range(deg):
                if phi[jj]:
                    coeffs[i - deg + jj] -= c * phi[jj]
        return tuple(coeffs[:deg])

    def is_integer_value(self, v):
        can = self.canonical()
        if any(can[1:]):
            return False
        return can[0] == v

    def complex(self):
        return sum(float(v) * complex(math.cos(2 * math.pi * k / self.n),
                                      math.sin(2 * math.pi * k / self.n))
                   for k, v in self.c.items())


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--cache", default="/tmp/export_cache")
    ap.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "data",
                                                  "extraspecial_normalizer_table.json"))
    ap.add_argument("--stage", default="all")
    args = ap.parse_args()
    os.makedirs(args.cache, exist_ok=True)

    t0 = time.time()
    gens = find_generators(args.cache)
    print(f"[{time.time()-t0:6.1f}s] generators found, orders",
          [matrix_order(g) for g in gens])
    mats, code_to_idx, parent, pgen = enumerate_group(gens, args.cache)
    print(f"[{time.time()-t0:6.1f}s] |Sp4(3)| = {len(mats)}")
    assert len(mats) == 51840

    class_of, reps, sizes = conjugacy_classes(mats, code_to_idx, gens)
    print(f"[{time.time()-t0:6.1f}s] Sp4(3) has {len(reps)} conjugacy classes; sizes sum",
          int(sizes.sum()))
    orders, inverse_class, pc = class_data(mats, code_to_idx, class_of, reps)
    print("class orders:", sorted(set(orders.tolist())))
    print("exponent:", math.lcm(*orders.tolist()))


if __name__ == "__main__":
    main()
