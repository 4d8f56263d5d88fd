#include "euler2d/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace euler2d {

namespace {
bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }
}

void fft_1d(cplx* a, int n, bool inverse) {
    if (!is_pow2(n)) throw std::invalid_argument("fft_1d: length must be a power of two");
    // bit-reversal permutation
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (int len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * M_PI / len * (inverse ? 1.0 : -1.0);
        const cplx wlen(std::cos(ang), std::sin(ang));
        for (int i = 0; i < n; i += len) {
            cplx w(1.0);
            for (int k = 0; k < len / 2; ++k) {
                const cplx u = a[i + k];
                const cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse) {
        const double s = 1.0 / n;
        for (int i = 0; i < n; ++i) a[i] *= s;
    }
}

void fft_2d(std::vector<cplx>& data, int n, bool inverse) {
    if (static_cast<int>(data.size()) != n * n)
        throw std::invalid_argument("fft_2d: size mismatch");
    for (int r = 0; r < n; ++r) fft_1d(data.data() + static_cast<size_t>(r) * n, n, inverse);
    std::vector<cplx> col(n);
    for (int c = 0; c < n; ++c) {
        for (int r = 0; r < n; ++r) col[r] = data[static_cast<size_t>(r) * n + c];
        fft_1d(col.data(), n, inverse);
        for (int r = 0; r < n; ++r) data[static_cast<size_t>(r) * n + c] = col[r];
    }
}

}  // namespace euler2d
