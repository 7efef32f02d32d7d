#pragma once

#include <cstdint>
#include <vector>

#include "logsyn/errors.hpp"

namespace logsyn::padic {

// The coefficient ring Z/p^N. Precision is fixed at construction; every value
// carries its ring and mixing rings is a hard error.
struct Ring {
    long long p = 2;
    int precision = 1;
    long long modulus = 2;  // p^precision

    static Ring make(long long p, int precision);

    bool operator==(const Ring& o) const {
        return p == o.p && precision == o.precision;
    }
    bool operator!=(const Ring& o) const { return !(*this == o); }
};

// Residue mod p^N with valuation bookkeeping.
class Scalar {
public:
    Scalar(Ring ring, long long value);

    const Ring& ring() const { return ring_; }
    long long residue() const { return r_; }
    bool is_zero() const { return r_ == 0; }
    bool is_unit() const { return r_ % ring_.p != 0; }

    // in [0, N]; valuation(0) = N
    int valuation() const;
    // u with u * p^valuation() == residue; requires valuation() < N
    Scalar unit_part() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator-() const;
    Scalar inverse() const;  // requires is_unit()

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    static Scalar zero(Ring ring) { return Scalar(ring, 0); }
    static Scalar one(Ring ring) { return Scalar(ring, 1); }
    // p^k, zero once k >= N; k must be nonnegative
    static Scalar p_power(Ring ring, long long k);

private:
    Ring ring_;
    long long r_;
};

// Dense row-major matrix over one Z/p^N.
class Matrix {
public:
    Matrix(Ring ring, int rows, int cols);  // zero matrix

    static Matrix identity(Ring ring, int n);

    const Ring& ring() const { return ring_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    long long at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }
    void set(int r, int c, long long v);
    void add_at(int r, int c, long long v);

    Matrix operator*(const Matrix& o) const;
    bool is_zero() const;

    void swap_rows(int i, int j);
    void swap_cols(int i, int j);
    void scale_row(int i, long long u);
    void scale_col(int j, long long u);
    void add_row_multiple(int dst, int src, long long f);  // row dst += f * row src
    void add_col_multiple(int dst, int src, long long f);

private:
    Ring ring_;
    int rows_, cols_;
    std::vector<long long> a_;
};

// L * m * col_transform = diag(p^{diag[k]}) for some invertible row transform L.
// Pivots take the entry of minimal valuation, ties row-major, so diag is
// nondecreasing and the outcome is deterministic.
struct SmithForm {
    std::vector<int> diag;           // length min(rows, cols), entries in [0, N]
    std::vector<int> col_exponents;  // length cols; diag padded with N for the kernel excess
    std::vector<int> row_exponents;  // length rows; diag padded with N (cokernel view)
    Matrix col_transform;            // cols x cols, invertible
    Matrix col_transform_inv;
};

SmithForm smith_normal_form(const Matrix& m);

// Isomorphism type of a finite module over Z/p^N: one cyclic factor p^a per
// exponent, sorted ascending. Factors at a == N may be truncations of free
// summands; callers separate the two by recomputing at N+1.
struct FinPModule {
    long long p = 2;
    int precision = 1;
    std::vector<int> exponents;  // sorted, each in [1, precision]

    int at_cap_count() const;
    long long exponent_sum() const;
    bool trivial() const { return exponents.empty(); }

    bool operator==(const FinPModule& o) const {
        return p == o.p && precision == o.precision && exponents == o.exponents;
    }
    bool operator!=(const FinPModule& o) const { return !(*this == o); }
};

// ker(d_b)/im(d_a) as a module over Z/p^N, for a three-term stretch
// A --d_a--> B --d_b--> C of free Z/p^N-modules (d_a is rows(B) x dim A,
// d_b is dim C x rows(B)). Throws CompositionNotZero unless d_b * d_a == 0.
FinPModule homology(const Matrix& d_a, const Matrix& d_b);

// Same three-term stretch read as the mod-p^N reduction of a complex of free
// W(F_p)-modules: only at-cap columns of d_b's Smith form count as kernel, so
// universal-coefficient torsion artifacts are not reported. Exact whenever no
// true elementary divisor lands in [p^N, infinity), which callers certify by
// agreement at precisions N and N+1.
FinPModule integral_homology(const Matrix& d_a, const Matrix& d_b);

// Bounded complex of free modules: d[k] maps degree k to degree k+1.
struct Complex {
    Ring ring;
    std::vector<int> dims;
    std::vector<Matrix> d;  // size dims.size() - 1 (or empty for a single term)

    void validate() const;  // shape + d*d == 0 (CompositionNotZero)
};

// Degreewise maps f[k] : src degree k -> dst degree k.
struct ChainMap {
    std::vector<Matrix> f;
};

// Mapping fiber of f : A -> B with T^n = A^n + B^{n-1} and
// D(a, b) = (da, f(a) - db).
Complex fiber(const Complex& a, const Complex& b, const ChainMap& f);

std::vector<FinPModule> integral_homology(const Complex& c);
std::vector<FinPModule> homology(const Complex& c);

// v_p(m!) via Legendre's formula.
long long factorial_valuation(long long m, long long p);
// (m! / p^{v_p(m!)}) mod p^N; cached per ring, thread-safe.
long long factorial_unit(long long m, Ring ring);

long long mod_inverse(long long a, long long modulus);
long long pow_mod(long long base, long long exp, long long modulus);

}  // namespace logsyn::padic
