#pragma once

// Arithmetic over Z_k^rank used for cover fibers and deck twists.
// Digits are stored one byte each, always reduced into [0, k).

#include <cstdint>
#include <vector>

#include "cubization/errors.hpp"

namespace cubization {

struct PhaseVec {
    std::uint8_t k = 2;
    std::vector<std::uint8_t> digits;

    PhaseVec() = default;
    PhaseVec(int modulus, int rank) : k(static_cast<std::uint8_t>(modulus)), digits(rank, 0) {
        if (modulus < 1 || modulus > 255) throw ValidationError("phase modulus out of range");
    }

    int rank() const { return static_cast<int>(digits.size()); }

    bool is_zero() const {
        for (std::uint8_t d : digits)
            if (d != 0) return false;
        return true;
    }

    void add_at(int i, int delta) {
        int v = (digits[i] + delta) % k;
        if (v < 0) v += k;
        digits[i] = static_cast<std::uint8_t>(v);
    }

    friend PhaseVec operator+(const PhaseVec& a, const PhaseVec& b) {
        structural_require(a.k == b.k && a.digits.size() == b.digits.size(),
                           "phase vector shape mismatch in +");
        PhaseVec r = a;
        for (std::size_t i = 0; i < r.digits.size(); ++i)
            r.digits[i] = static_cast<std::uint8_t>((r.digits[i] + b.digits[i]) % r.k);
        return r;
    }

    friend PhaseVec operator-(const PhaseVec& a, const PhaseVec& b) {
        structural_require(a.k == b.k && a.digits.size() == b.digits.size(),
                           "phase vector shape mismatch in -");
        PhaseVec r = a;
        for (std::size_t i = 0; i < r.digits.size(); ++i)
            r.digits[i] = static_cast<std::uint8_t>((r.digits[i] + r.k - b.digits[i]) % r.k);
        return r;
    }

    PhaseVec operator-() const {
        PhaseVec r = *this;
        for (auto& d : r.digits) d = static_cast<std::uint8_t>((k - d) % k);
        return r;
    }

    friend bool operator==(const PhaseVec& a, const PhaseVec& b) {
        return a.k == b.k && a.digits == b.digits;
    }

    // mixed-radix rank with digit 0 least significant; fits uint64 at desk scale
    std::uint64_t to_rank() const {
        std::uint64_t r = 0;
        for (int i = rank() - 1; i >= 0; --i) r = r * k + digits[i];
        return r;
    }

    static PhaseVec from_rank(int modulus, int rank, std::uint64_t value) {
        PhaseVec v(modulus, rank);
        for (int i = 0; i < rank; ++i) {
            v.digits[i] = static_cast<std::uint8_t>(value % modulus);
            value /= modulus;
        }
        return v;
    }
};

// row-major rank x rank matrix over Z_k
struct PhaseMatrix {
    std::uint8_t k = 2;
    int n = 0;
    std::vector<std::uint8_t> data;  // data[r * n + c]

    PhaseMatrix() = default;
    PhaseMatrix(int modulus, int rank)
        : k(static_cast<std::uint8_t>(modulus)), n(rank), data(static_cast<std::size_t>(rank) * rank, 0) {
        if (modulus < 1 || modulus > 255) throw ValidationError("phase modulus out of range");
    }

    std::uint8_t at(int r, int c) const { return data[static_cast<std::size_t>(r) * n + c]; }
    void set(int r, int c, int v) {
        int x = v % k;
        if (x < 0) x += k;
        data[static_cast<std::size_t>(r) * n + c] = static_cast<std::uint8_t>(x);
    }

    static PhaseMatrix identity(int modulus, int rank) {
        PhaseMatrix m(modulus, rank);
        for (int i = 0; i < rank; ++i) m.set(i, i, 1 % modulus);
        return m;
    }

    bool is_identity() const {
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                if (at(r, c) != (r == c ? 1 % k : 0)) return false;
        return true;
    }

    PhaseVec apply(const PhaseVec& x) const {
        structural_require(x.k == k && x.rank() == n, "matrix/vector shape mismatch");
        PhaseVec y(k, n);
        for (int r = 0; r < n; ++r) {
            unsigned acc = 0;
            for (int c = 0; c < n; ++c) acc += static_cast<unsigned>(at(r, c)) * x.digits[c];
            y.digits[r] = static_cast<std::uint8_t>(acc % k);
        }
        return y;
    }

    friend PhaseMatrix operator*(const PhaseMatrix& a, const PhaseMatrix& b) {
        structural_require(a.k == b.k && a.n == b.n, "matrix shape mismatch in *");
        PhaseMatrix r(a.k, a.n);
        for (int i = 0; i < a.n; ++i)
            for (int j = 0; j < a.n; ++j) {
                unsigned acc = 0;
                for (int l = 0; l < a.n; ++l)
                    acc += static_cast<unsigned>(a.at(i, l)) * b.at(l, j);
                r.set(i, j, static_cast<int>(acc % a.k));
            }
        return r;
    }

    friend bool operator==(const PhaseMatrix& a, const PhaseMatrix& b) {
        return a.k == b.k && a.n == b.n && a.data == b.data;
    }
};

// invertible over Z_k iff full rank mod every prime divisor of k
bool phase_matrix_invertible(const PhaseMatrix& m);

}  // namespace cubization
