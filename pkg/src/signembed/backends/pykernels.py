"""Pure-Python reference kernels.

Every routine here has a compiled twin in ``_ckernels.pyx``.  The two
backends must stay bit-identical on a given platform, so the algorithms are
pinned down to the order of floating-point operations:

* RNG: counter-based.  A 64-bit word stream is ``word(i) = mix64(key + (i+1)
  * 0x9E3779B97F4A7C15)`` where ``key = mix64(mix64(seed + 0x9E3779B97F4A7C15)
  ^ (stream * 0xD2B74407B1CE6E93 + 0x8CB92BA72F3D8DD7))`` and ``mix64`` is the
  SplitMix64 finalizer.  Uniforms take the top 53 bits: ``u = ((w >> 11) +
  0.5) * 2**-53`` (strictly inside (0,1)).  Normals are Box-Muller on
  consecutive word pairs: normal ``i`` uses words ``2*(i//2)`` and
  ``2*(i//2)+1``; even indices take the cosine branch, odd the sine branch.
  Signs take the top bit of word ``i``.
* FFT: iterative radix-2 decimation-in-time with bit-reversal; twiddles are
  computed per stage by direct cos/sin calls (no recurrences).
* Circular convolution: FFT route for power-of-two lengths, direct
  O(n^2) summation (input index ascending) otherwise.
* Jacobi eigensolver: cyclic-by-row sweeps, Numerical-Recipes rotation
  formulas, convergence when the off-diagonal Frobenius norm drops below
  1e-12 times the Frobenius norm of the input, at most 100 sweeps.
* Dense reductions: mat_vec accumulates left-to-right per row; mat_mat and
  gram accumulate over the contraction index in ascending order.

All array arguments are C-contiguous float64 numpy arrays; validation
happens in the calling layer.
"""

from __future__ import annotations

import itertools
from math import cos, log, sin, sqrt

import numpy as np

BACKEND_NAME = "python"

_MASK = 0xFFFFFFFFFFFFFFFF
_GOLDEN = 0x9E3779B97F4A7C15
_STREAM_MUL = 0xD2B74407B1CE6E93
_STREAM_ADD = 0x8CB92BA72F3D8DD7
_INV_2_53 = 1.0 / 9007199254740992.0  # exact 2**-53
_TWO_PI = 6.283185307179586

_JACOBI_TOL = 1e-12
_JACOBI_MAX_SWEEPS = 100


def _mix64(z: int) -> int:
    z &= _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def rng_key(seed: int, stream: int) -> int:
    """Per-stream key; the word sequence is SplitMix64 started at this state."""
    a = _mix64((seed + _GOLDEN) & _MASK)
    b = (stream * _STREAM_MUL + _STREAM_ADD) & _MASK
    return _mix64(a ^ b)


def rng_word(seed: int, stream: int, index: int) -> int:
    key = rng_key(seed, stream)
    return _mix64((key + ((index + 1) * _GOLDEN)) & _MASK)


def rng_uniforms(seed, stream, start, count):
    """Uniforms in (0,1) at word indices start..start+count-1."""
    key = rng_key(seed, stream)
    out = np.empty(count, dtype=np.float64)
    for i in range(count):
        w = _mix64((key + ((start + i + 1) * _GOLDEN)) & _MASK)
        out[i] = ((w >> 11) + 0.5) * _INV_2_53
    return out

def rng_normals(seed, stream, start, count):
    """Standard normals at indices start..start+count-1 (Box-Muller pairs)."""
    key = rng_key(seed, stream)
    out = np.empty(count, dtype=np.float64)
    for i in range(count):
        idx = start + i
        p = idx >> 1
        w1 = _mix64((key + ((2 * p + 1) * _GOLDEN)) & _MASK)
        w2 = _mix64((key + ((2 * p + 2) * _GOLDEN)) & _MASK)
        u1 = ((w1 >> 11) + 0.5) * _INV_2_53
        u2 = ((w2 >> 11) + 0.5) * _INV_2_53
        r = sqrt(-2.0 * log(u1))
        if idx & 1:
            out[i] = r * sin(_TWO_PI * u2)
        else:
            out[i] = r * cos(_TWO_PI * u2)
    return out


def rng_signs(seed, stream, start, count):
    """+-1.0 values from the top bit of each word."""
    key = rng_key(seed, stream)
    out = np.empty(count, dtype=np.float64)
    for i in range(count):
        w = _mix64((key + ((start + i + 1) * _GOLDEN)) & _MASK)
        out[i] = 1.0 if (w >> 63) else -1.0
    return out


def mat_vec(a, x):
    m, n = a.shape
    al = a.tolist()
    xl = x.tolist()
    out = np.empty(m, dtype=np.float64)
    for i in range(m):
        row = al[i]
        s = 0.0
        for j in range(n):
            s += row[j] * xl[j]
        out[i] = s
    return out


def mat_mat(a, b):
    m, kk = a.shape
    k2, n = b.shape
    al = a.tolist()
    bl = b.tolist()
    acc = [[0.0] * n for _ in range(m)]
    for i in range(m):
        rowa = al[i]
        rowc = acc[i]
        for k in range(kk):
            aik = rowa[k]
            rowb = bl[k]
            for j in range(n):
                rowc[j] += aik * rowb[j]
    return np.array(acc, dtype=np.float64)


def gram(a):
    """a^T a with the row index as the ascending accumulation order."""
    m, n = a.shape
    al = a.tolist()
    g = [[0.0] * n for _ in range(n)]
    for r in range(m):
        row = al[r]
        for p in range(n):
            v = row[p]
            gp = g[p]
            for q in range(p, n):
                gp[q] += v * row[q]
    for p in range(n):
        for q in range(p + 1, n):
            g[q][p] = g[p][q]
    return np.array(g, dtype=np.float64)


def scale_columns(a, s):
    m, n = a.shape
    al = a.tolist()
    sl = s.tolist()
    out = np.empty((m, n), dtype=np.float64)
    for i in range(m):
        row = al[i]
        for j in range(n):
            out[i, j] = row[j] * sl[j]
    return out


def col_sq_norms(a):
    m, n = a.shape
    al = a.tolist()
    acc = [0.0] * n
    for i in range(m):
        row = al[i]
        for j in range(n):
            acc[j] += row[j] * row[j]
    return np.array(acc, dtype=np.float64)


def max_col_distortion(z, q):
    """max over columns j of |sum_i z[i,j]^2 - q[j]|."""
    m, n = z.shape
    zl = z.tolist()
    ql = q.tolist()
    acc = [0.0] * n
    for i in range(m):
        row = zl[i]
        for j in range(n):
            acc[j] += row[j] * row[j]
    best = 0.0
    for j in range(n):
        d = acc[j] - ql[j]
        if d < 0.0:
            d = -d
        if d > best:
            best = d
    return best


def _fft_inplace(re, im, inverse):
    n = len(re)
    j = 0
    for i in range(1, n):
        bit = n >> 1
        while j & bit:
            j ^= bit
            bit >>= 1
        j |= bit
        if i < j:
            re[i], re[j] = re[j], re[i]
            im[i], im[j] = im[j], im[i]
    m = 2
    while m <= n:
        half = m >> 1
        wr = [0.0] * half
        wi = [0.0] * half
        for t in range(half):
            ang = (_TWO_PI * t) / m
            wr[t] = cos(ang)
            if inverse:
                wi[t] = sin(ang)
            else:
                wi[t] = -sin(ang)
        for k0 in range(0, n, m):
            for t in range(half):
                i0 = k0 + t
                i1 = i0 + half
                ur = re[i0]
                ui = im[i0]
                vr = re[i1] * wr[t] - im[i1] * wi[t]
                vi = re[i1] * wi[t] + im[i1] * wr[t]
                re[i0] = ur + vr
                im[i0] = ui + vi
                re[i1] = ur - vr
                im[i1] = ui - vi
        m <<= 1
    return re, im


def _is_pow2(n):
    return n > 0 and (n & (n - 1)) == 0


def circular_convolve(u, v):
    """w[j] = sum_i u[(j-i) mod n] * v[i]."""
    n = len(u)
    ul = u.tolist()
    vl = v.tolist()
    out = np.empty(n, dtype=np.float64)
    if _is_pow2(n) and n > 1:
        ar, ai = _fft_inplace(list(ul), [0.0] * n, False)
        br, bi = _fft_inplace(list(vl), [0.0] * n, False)
        cr = [0.0] * n
        ci = [0.0] * n
        for i in range(n):
            cr[i] = ar[i] * br[i] - ai[i] * bi[i]
            ci[i] = ar[i] * bi[i] + ai[i] * br[i]
        cr, ci = _fft_inplace(cr, ci, True)
        inv_n = 1.0 / n
        for i in range(n):
            out[i] = cr[i] * inv_n
    else:
        for j in range(n):
            s = 0.0
            for i in range(n):
                s += ul[(j - i) % n] * vl[i]
            out[j] = s
    return out


def _jacobi_core(a, d, want_vectors):
    """Cyclic Jacobi on a list-of-lists copy. Returns (vals, vecs, residual, ok)."""
    v = None
    if want_vectors:
        v = [[1.0 if r == c else 0.0 for c in range(d)] for r in range(d)]
    normf = 0.0
    for i in range(d):
        for j in range(d):
            normf += a[i][j] * a[i][j]
    normf = sqrt(normf)
    tol = _JACOBI_TOL * normf
    sweeps = 0
    while True:
        off = 0.0
        for i in range(d):
            for j in range(d):
                if i != j:
                    off += a[i][j] * a[i][j]
        off = sqrt(off)
        if off <= tol:
            ok = True
            break
        if sweeps >= _JACOBI_MAX_SWEEPS:
            ok = False
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[p][q]
                if apq == 0.0:
                    continue
                theta = (a[q][q] - a[p][p]) / (2.0 * apq)
                if theta >= 0.0:
                    t = 1.0 / (theta + sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + sqrt(theta * theta + 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                tau = s / (1.0 + c)
                app = a[p][p]
                aqq = a[q][q]
                a[p][p] = app - t * apq
                a[q][q] = aqq + t * apq
                a[p][q] = 0.0
                a[q][p] = 0.0
                for r in range(d):
                    if r == p or r == q:
                        continue
                    arp = a[r][p]
                    arq = a[r][q]
                    a[r][p] = arp - s * (arq + tau * arp)
                    a[p][r] = a[r][p]
                    a[r][q] = arq + s * (arp - tau * arq)
                    a[q][r] = a[r][q]
                if v is not None:
                    for r in range(d):
                        vrp = v[r][p]
                        vrq = v[r][q]
                        v[r][p] = vrp - s * (vrq + tau * vrp)
                        v[r][q] = vrq + s * (vrp - tau * vrq)
        sweeps += 1
    vals = [a[i][i] for i in range(d)]
    for i in range(d - 1):
        mi = i
        for j in range(i + 1, d):
            if vals[j] < vals[mi]:
                mi = j
        if mi != i:
            vals[i], vals[mi] = vals[mi], vals[i]
            if v is not None:
                for r in range(d):
                    v[r][i], v[r][mi] = v[r][mi], v[r][i]
    return vals, v, off, ok


def jacobi_eigvals(m):
    d = m.shape[0]
    a = [list(row) for row in m.tolist()]
    vals, _, residual, ok = _jacobi_core(a, d, False)
    return np.array(vals, dtype=np.float64), residual, ok


def jacobi_eig(m):
    d = m.shape[0]
    a = [list(row) for row in m.tolist()]
    vals, vecs, residual, ok = _jacobi_core(a, d, True)
    return (
        np.array(vals, dtype=np.float64),
        np.array(vecs, dtype=np.float64),
        residual,
        ok,
    )


def _support_extreme(gl, support, k):
    sub = [[0.0] * k for _ in range(k)]
    for p in range(k):
        gp = gl[support[p]]
        for q in range(k):
            sub[p][q] = gp[support[q]]
        sub[p][p] -= 1.0
    vals, _, _, ok = _jacobi_core(sub, k, False)
    if not ok:
        return -1.0
    lo = vals[0]
    hi = vals[k - 1]
    if lo < 0.0:
        lo = -lo
    if hi < 0.0:
        hi = -hi
    return hi if hi > lo else lo


def support_distortion(g, support):
    """max |eigenvalue| of G[J,J] - Id for one support J (indices ascending)."""
    gl = g.tolist()
    v = _support_extreme(gl, list(support), len(support))
    if v < 0.0:
        raise ArithmeticError("jacobi failed to converge on a support block")
    return v


def max_sparse_distortion(g, k, start, stop):
    """Max support distortion over lexicographic k-combinations rank [start, stop)."""
    n = g.shape[0]
    gl = g.tolist()
    best = 0.0
    combos = itertools.islice(itertools.combinations(range(n), k), start, stop)
    for sup in combos:
        val = _support_extreme(gl, list(sup), k)
        if val < 0.0:
            raise ArithmeticError("jacobi failed to converge on a support block")
        if val > best:
            best = val
    return best
