#include "cubization/phase.hpp"

namespace cubization {

namespace {

int rank_mod_p(const PhaseMatrix& m, int p) {
    int n = m.n;
    std::vector<std::vector<int>> a(n, std::vector<int>(n));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) a[r][c] = m.at(r, c) % p;

    int rank = 0;
    for (int col = 0; col < n && rank < n; ++col) {
        int pivot = -1;
        for (int r = rank; r < n; ++r)
            if (a[r][col] != 0) { pivot = r; break; }
        if (pivot == -1) continue;
        std::swap(a[rank], a[pivot]);
        // pivot inverse mod p by Fermat
        long long inv = 1, base = a[rank][col], e = p - 2;
        while (e > 0) {
            if (e & 1) inv = inv * base % p;
            base = base * base % p;
            e >>= 1;
        }
        for (int c = col; c < n; ++c) a[rank][c] = static_cast<int>(a[rank][c] * inv % p);
        for (int r = 0; r < n; ++r) {
            if (r == rank || a[r][col] == 0) continue;
            int f = a[r][col];
            for (int c = col; c < n; ++c)
                a[r][c] = ((a[r][c] - f * a[rank][c]) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

}  // namespace

bool phase_matrix_invertible(const PhaseMatrix& m) {
    if (m.k == 1) return true;
    int k = m.k;
    for (int p = 2; p <= k; ++p) {
        if (k % p != 0) continue;
        while (k % p == 0) k /= p;
        if (rank_mod_p(m, p) != m.n) return false;
    }
    return true;
}

}  // namespace cubization
