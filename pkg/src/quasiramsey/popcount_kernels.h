/* All-pairs common-neighbour counts over bit-packed adjacency rows.
 *
 * Row x of an n-vertex graph occupies w = ceil(n/64) consecutive uint64
 * words; bit (j % 64) of word j / 64 is set iff x ~ j.  The count for a
 * pair (x, y) is popcount(row_x & row_y) = |N(x) & N(y)|.
 *
 * Three code paths, picked once at runtime: AVX-512 VPOPCNTDQ, scalar
 * POPCNT, and portable C.
 */
#ifndef QUASIRAMSEY_POPCOUNT_KERNELS_H
#define QUASIRAMSEY_POPCOUNT_KERNELS_H

#include <stdint.h>
#include <string.h>

#if defined(__x86_64__) && defined(__GNUC__)
#include <immintrin.h>
#define QR_X86 1
#else
#define QR_X86 0
#endif

#define QR_TILE 32

typedef void (*qr_tile_fn)(const uint64_t *, int64_t, int64_t, int64_t,
                           int64_t, int64_t, int64_t, int32_t *);

static inline int64_t qr_and_count_generic(const uint64_t *a, const uint64_t *b,
                                           int64_t w) {
    int64_t c = 0;
    for (int64_t k = 0; k < w; k++) {
        uint64_t v = a[k] & b[k];
        v = v - ((v >> 1) & 0x5555555555555555ULL);
        v = (v & 0x3333333333333333ULL) + ((v >> 2) & 0x3333333333333333ULL);
        v = (v + (v >> 4)) & 0x0F0F0F0F0F0F0F0FULL;
        c += (int64_t)((v * 0x0101010101010101ULL) >> 56);
    }
    return c;
}

/* acc[i * QR_TILE + j] = count(x0 + i, y0 + j) for the tile rows/cols given. */
static void qr_tile_generic(const uint64_t *bits, int64_t w, int64_t x0,
                            int64_t x1, int64_t y0, int64_t y1, int64_t upper,
                            int32_t *acc) {
    for (int64_t x = x0; x < x1; x++)
        for (int64_t y = y0; y < y1; y++) {
            if (upper && y <= x) continue;
            acc[(x - x0) * QR_TILE + (y - y0)] =
                (int32_t)qr_and_count_generic(bits + x * w, bits + y * w, w);
        }
}

#if QR_X86
__attribute__((target("popcnt"))) static inline int64_t
qr_and_count_popcnt(const uint64_t *a, const uint64_t *b, int64_t w) {
    int64_t c = 0;
    for (int64_t k = 0; k < w; k++) c += __builtin_popcountll(a[k] & b[k]);
    return c;
}

__attribute__((target("popcnt"))) static void
qr_tile_popcnt(const uint64_t *bits, int64_t w, int64_t x0, int64_t x1,
               int64_t y0, int64_t y1, int64_t upper, int32_t *acc) {
    for (int64_t x = x0; x < x1; x++)
        for (int64_t y = y0; y < y1; y++) {
            if (upper && y <= x) continue;
            acc[(x - x0) * QR_TILE + (y - y0)] =
                (int32_t)qr_and_count_popcnt(bits + x * w, bits + y * w, w);
        }
}

#define QR_AVX512 __attribute__((target("avx512f,avx512vpopcntdq,popcnt")))

#define QR_STEP(u, v, a) a = _mm512_add_epi64(a, _mm512_popcnt_epi64(_mm512_and_si512(u, v)))

/* 4 x-rows against 2 y-rows; 8 independent accumulators.  The last partial
 * vector is read with a zeroing mask instead of a scalar tail. */
QR_AVX512 static inline void
qr_micro_4x2(const uint64_t *x0, const uint64_t *x1, const uint64_t *x2,
             const uint64_t *x3, const uint64_t *y0, const uint64_t *y1,
             int64_t w, int32_t *out) {
    int64_t wv = w & ~(int64_t)7;
    __m512i a00 = _mm512_setzero_si512(), a01 = a00, a10 = a00, a11 = a00;
    __m512i a20 = a00, a21 = a00, a30 = a00, a31 = a00;
    __m512i v0, v1, u;
    for (int64_t k = 0; k < wv; k += 8) {
        v0 = _mm512_loadu_si512((const void *)(y0 + k));
        v1 = _mm512_loadu_si512((const void *)(y1 + k));
        u = _mm512_loadu_si512((const void *)(x0 + k));
        QR_STEP(u, v0, a00); QR_STEP(u, v1, a01);
        u = _mm512_loadu_si512((const void *)(x1 + k));
        QR_STEP(u, v0, a10); QR_STEP(u, v1, a11);
        u = _mm512_loadu_si512((const void *)(x2 + k));
        QR_STEP(u, v0, a20); QR_STEP(u, v1, a21);
        u = _mm512_loadu_si512((const void *)(x3 + k));
        QR_STEP(u, v0, a30); QR_STEP(u, v1, a31);
    }
    if (wv < w) {
        __mmask8 m = (__mmask8)((1u << (w - wv)) - 1);
        v0 = _mm512_maskz_loadu_epi64(m, y0 + wv);
        v1 = _mm512_maskz_loadu_epi64(m, y1 + wv);
        u = _mm512_maskz_loadu_epi64(m, x0 + wv);
        QR_STEP(u, v0, a00); QR_STEP(u, v1, a01);
        u = _mm512_maskz_loadu_epi64(m, x1 + wv);
        QR_STEP(u, v0, a10); QR_STEP(u, v1, a11);
        u = _mm512_maskz_loadu_epi64(m, x2 + wv);
        QR_STEP(u, v0, a20); QR_STEP(u, v1, a21);
        u = _mm512_maskz_loadu_epi64(m, x3 + wv);
        QR_STEP(u, v0, a30); QR_STEP(u, v1, a31);
    }
    out[0] = (int32_t)_mm512_reduce_add_epi64(a00);
    out[1] = (int32_t)_mm512_reduce_add_epi64(a01);
    out[QR_TILE] = (int32_t)_mm512_reduce_add_epi64(a10);
    out[QR_TILE + 1] = (int32_t)_mm512_reduce_add_epi64(a11);
    out[2 * QR_TILE] = (int32_t)_mm512_reduce_add_epi64(a20);
    out[2 * QR_TILE + 1] = (int32_t)_mm512_reduce_add_epi64(a21);
    out[3 * QR_TILE] = (int32_t)_mm512_reduce_add_epi64(a30);
    out[3 * QR_TILE + 1] = (int32_t)_mm512_reduce_add_epi64(a31);
}

QR_AVX512 static void
qr_tile_avx512(const uint64_t *bits, int64_t w, int64_t x0, int64_t x1,
               int64_t y0, int64_t y1, int64_t upper, int32_t *acc) {
    int64_t nx = x1 - x0, ny = y1 - y0;
    int64_t mx = nx & ~(int64_t)3, my = ny & ~(int64_t)1;
    for (int64_t i = 0; i < mx; i += 4)
        for (int64_t j = 0; j < my; j += 2) {
            /* whole micro-block on or below the diagonal */
            if (upper && y0 + j + 1 <= x0 + i) continue;
            const uint64_t *bx = bits + (x0 + i) * w;
            const uint64_t *by = bits + (y0 + j) * w;
            qr_micro_4x2(bx, bx + w, bx + 2 * w, bx + 3 * w, by, by + w, w,
                         acc + i * QR_TILE + j);
        }
    /* ragged edges */
    for (int64_t i = 0; i < nx; i++)
        for (int64_t j = 0; j < ny; j++) {
            if (i < mx && j < my) continue;
            int64_t x = x0 + i, y = y0 + j;
            if (upper && y <= x) continue;
            acc[i * QR_TILE + j] =
                (int32_t)qr_and_count_popcnt(bits + x * w, bits + y * w, w);
        }
}
#endif /* QR_X86 */

static qr_tile_fn qr_select_tile(void) {
#if QR_X86
    __builtin_cpu_init();
    if (__builtin_cpu_supports("avx512f") &&
        __builtin_cpu_supports("avx512vpopcntdq"))
        return qr_tile_avx512;
    if (__builtin_cpu_supports("popcnt")) return qr_tile_popcnt;
#endif
    return qr_tile_generic;
}

static const char *qr_isa_name(void) {
    qr_tile_fn f = qr_select_tile();
#if QR_X86
    if (f == qr_tile_avx512) return "avx512-vpopcntdq";
    if (f == qr_tile_popcnt) return "popcnt";
#endif
    (void)f;
    return "generic";
}

/* Full symmetric count matrix; out[x*n + x] is the degree of x. */
static void qr_common_counts(const uint64_t *bits, int64_t n, int64_t w,
                             int32_t *out) {
    qr_tile_fn tile = qr_select_tile();
    int32_t acc[QR_TILE * QR_TILE];
    for (int64_t x0 = 0; x0 < n; x0 += QR_TILE) {
        int64_t x1 = x0 + QR_TILE < n ? x0 + QR_TILE : n;
        for (int64_t y0 = x0; y0 < n; y0 += QR_TILE) {
            int64_t y1 = y0 + QR_TILE < n ? y0 + QR_TILE : n;
            tile(bits, w, x0, x1, y0, y1, 0, acc);
            for (int64_t x = x0; x < x1; x++)
                for (int64_t y = y0; y < y1; y++) {
                    int32_t c = acc[(x - x0) * QR_TILE + (y - y0)];
                    out[x * n + y] = c;
                    out[y * n + x] = c;
                }
        }
    }
}

/* max over x < y of den * c(x,y) - num * (deg[x] + deg[y]); exact in int64.
 * Each tile row is reduced with a branch-free max first; only rows that can
 * change the running best are rescanned for the first maximising column. */
static int64_t qr_max_pair_int(const uint64_t *bits, int64_t n, int64_t w,
                               const int64_t *deg, int64_t num, int64_t den,
                               int64_t *bx, int64_t *by) {
    qr_tile_fn tile = qr_select_tile();
    int32_t acc[QR_TILE * QR_TILE];
    int64_t best = INT64_MIN;
    *bx = -1;
    *by = -1;
    for (int64_t x0 = 0; x0 < n; x0 += QR_TILE) {
        int64_t x1 = x0 + QR_TILE < n ? x0 + QR_TILE : n;
        for (int64_t y0 = x0; y0 < n; y0 += QR_TILE) {
            int64_t y1 = y0 + QR_TILE < n ? y0 + QR_TILE : n;
            tile(bits, w, x0, x1, y0, y1, 1, acc);
            for (int64_t x = x0; x < x1; x++) {
                int64_t ys = y0 > x + 1 ? y0 : x + 1;
                if (ys >= y1) continue;
                const int32_t *row = acc + (x - x0) * QR_TILE - y0;
                int64_t m = INT64_MIN;
                for (int64_t y = ys; y < y1; y++) {
                    int64_t s = den * (int64_t)row[y] - num * deg[y];
                    m = s > m ? s : m;
                }
                m -= num * deg[x];
                if (m < best || (m == best && x > *bx)) continue;
                for (int64_t y = ys; y < y1; y++) {
                    int64_t s = den * (int64_t)row[y] - num * (deg[x] + deg[y]);
                    if (s != m) continue;
                    /* ties resolve to the lexicographically first pair */
                    if (s > best || x < *bx || (x == *bx && y < *by)) {
                        best = s;
                        *bx = x;
                        *by = y;
                    }
                    break;
                }
            }
        }
    }
    return best;
}

/* Same scan with a floating point weight p. */
static double qr_max_pair_float(const uint64_t *bits, int64_t n, int64_t w,
                                const int64_t *deg, double p, int64_t *bx,
                                int64_t *by) {
    qr_tile_fn tile = qr_select_tile();
    int32_t acc[QR_TILE * QR_TILE];
    double best = -1.0 / 0.0;
    *bx = -1;
    *by = -1;
    for (int64_t x0 = 0; x0 < n; x0 += QR_TILE) {
        int64_t x1 = x0 + QR_TILE < n ? x0 + QR_TILE : n;
        for (int64_t y0 = x0; y0 < n; y0 += QR_TILE) {
            int64_t y1 = y0 + QR_TILE < n ? y0 + QR_TILE : n;
            tile(bits, w, x0, x1, y0, y1, 1, acc);
            for (int64_t x = x0; x < x1; x++) {
                int64_t ys = y0 > x + 1 ? y0 : x + 1;
                const int32_t *row = acc + (x - x0) * QR_TILE - y0;
                for (int64_t y = ys; y < y1; y++) {
                    double s = (double)row[y] - p * (double)(deg[x] + deg[y]);
                    if (s > best || (s == best && (x < *bx || (x == *bx && y < *by)))) {
                        best = s;
                        *bx = x;
                        *by = y;
                    }
                }
            }
        }
    }
    return best;
}

/* In-place transpose of a 64x64 bit block: bit j of a[i] <-> bit i of a[j]. */
static inline void qr_transpose64(uint64_t a[64]) {
    uint64_t m = 0x00000000FFFFFFFFULL;
    for (int j = 32; j; j >>= 1, m ^= m << j)
        for (int k = 0; k < 64; k = ((k | j) + 1) & ~j) {
            uint64_t t = ((a[k] >> j) ^ a[k | j]) & m;
            a[k | j] ^= t;
            a[k] ^= t << j;
        }
}

/* Keep only bits y > x of each row x, then mirror them below the diagonal. */
static void qr_symmetrize_upper(uint64_t *bits, int64_t n, int64_t w) {
    uint64_t blk[64];
    for (int64_t x = 0; x < n; x++) {
        uint64_t *row = bits + x * w;
        int64_t xw = x >> 6;
        for (int64_t k = 0; k < xw; k++) row[k] = 0;
        row[xw] &= ~((2ULL << (x & 63)) - 1);
        for (int64_t k = (n + 63) >> 6; k < w; k++) row[k] = 0;
        if (n & 63) row[(n - 1) >> 6] &= (1ULL << (n & 63)) - 1;
    }
    for (int64_t bi = 0; bi * 64 < n; bi++) {
        int64_t r0 = bi * 64, rn = n - r0 < 64 ? n - r0 : 64;
        for (int64_t bj = bi; bj < w; bj++) {
            for (int64_t i = 0; i < 64; i++) blk[i] = i < rn ? bits[(r0 + i) * w + bj] : 0;
            qr_transpose64(blk);
            int64_t c0 = bj * 64, cn = n - c0 < 64 ? n - c0 : 64;
            for (int64_t i = 0; i < cn; i++) bits[(c0 + i) * w + bi] |= blk[i];
        }
    }
}

#endif /* QUASIRAMSEY_POPCOUNT_KERNELS_H */
