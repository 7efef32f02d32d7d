#include "logsyn/padic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>

namespace logsyn::padic {

namespace {

void require_same_ring(const Ring& a, const Ring& b, const char* where) {
    if (a != b) {
        throw PrecisionMismatch(std::string(where) + ": mixed rings Z/" +
                                std::to_string(a.p) + "^" + std::to_string(a.precision) +
                                " and Z/" + std::to_string(b.p) + "^" +
                                std::to_string(b.precision));
    }
}

bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

Ring Ring::make(long long p, int precision) {
    if (!is_prime(p)) throw std::invalid_argument("Ring: p must be prime");
    if (precision < 1) throw std::invalid_argument("Ring: precision must be >= 1");
    long long m = 1;
    for (int k = 0; k < precision; ++k) {
        if (m > (1LL << 22) / p)
            throw std::invalid_argument("Ring: p^precision too large for exact tables");
        m *= p;
    }
    return Ring{p, precision, m};
}

Scalar::Scalar(Ring ring, long long value) : ring_(ring) {
    r_ = value % ring_.modulus;
    if (r_ < 0) r_ += ring_.modulus;
}

int Scalar::valuation() const {
    if (r_ == 0) return ring_.precision;
    int v = 0;
    long long x = r_;
    while (x % ring_.p == 0) {
        x /= ring_.p;
        ++v;
    }
    return v;
}

Scalar Scalar::unit_part() const {
    int v = valuation();
    if (v >= ring_.precision)
        throw std::domain_error("unit_part: value is zero at this precision");
    long long x = r_;
    for (int k = 0; k < v; ++k) x /= ring_.p;
    return Scalar(ring_, x);
}

Scalar Scalar::operator+(const Scalar& o) const {
    require_same_ring(ring_, o.ring_, "Scalar+");
    return Scalar(ring_, r_ + o.r_);
}

Scalar Scalar::operator-(const Scalar& o) const {
    require_same_ring(ring_, o.ring_, "Scalar-");
    return Scalar(ring_, r_ - o.r_);
}

Scalar Scalar::operator*(const Scalar& o) const {
    require_same_ring(ring_, o.ring_, "Scalar*");
    return Scalar(ring_, (r_ * o.r_) % ring_.modulus);
}

Scalar Scalar::operator-() const { return Scalar(ring_, -r_); }

Scalar Scalar::inverse() const {
    if (!is_unit()) throw std::domain_error("Scalar::inverse: not a unit");
    return Scalar(ring_, mod_inverse(r_, ring_.modulus));
}

bool Scalar::operator==(const Scalar& o) const {
    require_same_ring(ring_, o.ring_, "Scalar==");
    return r_ == o.r_;
}

Scalar Scalar::p_power(Ring ring, long long k) {
    if (k < 0) throw NegativeDividedPower("p_power: negative exponent");
    if (k >= ring.precision) return Scalar(ring, 0);
    long long v = 1;
    for (long long t = 0; t < k; ++t) v *= ring.p;
    return Scalar(ring, v);
}

Matrix::Matrix(Ring ring, int rows, int cols)
    : ring_(ring), rows_(rows), cols_(cols),
      a_(static_cast<size_t>(rows) * cols, 0) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("Matrix: negative dimension");
}

Matrix Matrix::identity(Ring ring, int n) {
    Matrix m(ring, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

void Matrix::set(int r, int c, long long v) {
    v %= ring_.modulus;
    if (v < 0) v += ring_.modulus;
    a_[static_cast<size_t>(r) * cols_ + c] = v;
}

void Matrix::add_at(int r, int c, long long v) { set(r, c, at(r, c) + v); }

Matrix Matrix::operator*(const Matrix& o) const {
    require_same_ring(ring_, o.ring_, "Matrix*");
    if (cols_ != o.rows_) throw std::invalid_argument("Matrix*: shape mismatch");
    Matrix out(ring_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            long long v = at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < o.cols_; ++j)
                out.set(i, j, out.at(i, j) + v * o.at(k, j) % ring_.modulus);
        }
    return out;
}

bool Matrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](long long v) { return v == 0; });
}

void Matrix::swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < cols_; ++c)
        std::swap(a_[static_cast<size_t>(i) * cols_ + c], a_[static_cast<size_t>(j) * cols_ + c]);
}

void Matrix::swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < rows_; ++r)
        std::swap(a_[static_cast<size_t>(r) * cols_ + i], a_[static_cast<size_t>(r) * cols_ + j]);
}

void Matrix::scale_row(int i, long long u) {
    for (int c = 0; c < cols_; ++c) set(i, c, at(i, c) * (u % ring_.modulus));
}

void Matrix::scale_col(int j, long long u) {
    for (int r = 0; r < rows_; ++r) set(r, j, at(r, j) * (u % ring_.modulus));
}

void Matrix::add_row_multiple(int dst, int src, long long f) {
    f %= ring_.modulus;
    for (int c = 0; c < cols_; ++c) set(dst, c, at(dst, c) + f * at(src, c));
}

void Matrix::add_col_multiple(int dst, int src, long long f) {
    f %= ring_.modulus;
    for (int r = 0; r < rows_; ++r) set(r, dst, at(r, dst) + f * at(r, src));
}

namespace {

int residue_valuation(long long x, const Ring& ring) {
    if (x == 0) return ring.precision;
    int v = 0;
    while (x % ring.p == 0) {
        x /= ring.p;
        ++v;
    }
    return v;
}

long long p_pow(const Ring& ring, int k) {
    long long v = 1;
    for (int t = 0; t < k && t < ring.precision; ++t) v *= ring.p;
    return k >= ring.precision ? 0 : v;
}

}  // namespace

SmithForm smith_normal_form(const Matrix& m) {
    const Ring ring = m.ring();
    const int rows = m.rows(), cols = m.cols();
    const int N = ring.precision;
    Matrix a = m;
    Matrix rt = Matrix::identity(ring, cols);
    Matrix ri = Matrix::identity(ring, cols);

    SmithForm out{{}, {}, {}, rt, ri};
    const int nmin = std::min(rows, cols);

    for (int k = 0; k < nmin; ++k) {
        // minimal-valuation pivot, row-major tie break
        int best = N, bi = -1, bj = -1;
        for (int r = k; r < rows; ++r)
            for (int c = k; c < cols; ++c) {
                int v = residue_valuation(a.at(r, c), ring);
                if (v < best) {
                    best = v;
                    bi = r;
                    bj = c;
                }
            }
        if (bi < 0) break;  // remaining block is zero mod p^N

        a.swap_rows(k, bi);
        a.swap_cols(k, bj);
        rt.swap_cols(k, bj);
        ri.swap_rows(k, bj);

        const int d = best;
        const long long pd = p_pow(ring, d);
        long long u = a.at(k, k) / pd % ring.modulus;
        long long uinv = mod_inverse(u, ring.modulus);
        a.scale_col(k, uinv);
        rt.scale_col(k, uinv);
        ri.scale_row(k, u);
        // pivot is now exactly p^d; every remaining entry has valuation >= d
        for (int r = k + 1; r < rows; ++r) {
            long long v = a.at(r, k);
            if (v != 0) a.add_row_multiple(r, k, -(v / pd));
        }
        for (int c = k + 1; c < cols; ++c) {
            long long v = a.at(k, c);
            if (v != 0) {
                long long f = v / pd;
                a.add_col_multiple(c, k, -f);
                rt.add_col_multiple(c, k, -f);
                ri.add_row_multiple(k, c, f);
            }
        }
        out.diag.push_back(d);
    }
    while (static_cast<int>(out.diag.size()) < nmin) out.diag.push_back(N);

    out.col_exponents = out.diag;
    out.col_exponents.resize(cols, N);
    out.row_exponents = out.diag;
    out.row_exponents.resize(rows, N);
    out.col_transform = rt;
    out.col_transform_inv = ri;
    return out;
}

int FinPModule::at_cap_count() const {
    return static_cast<int>(std::count(exponents.begin(), exponents.end(), precision));
}

long long FinPModule::exponent_sum() const {
    long long s = 0;
    for (int e : exponents) s += e;
    return s;
}

namespace {

void check_three_term(const Matrix& d_a, const Matrix& d_b) {
    require_same_ring(d_a.ring(), d_b.ring(), "homology");
    if (d_a.rows() != d_b.cols())
        throw std::invalid_argument("homology: middle dimensions disagree");
    if (d_a.cols() > 0 && d_b.rows() > 0 && !(d_b * d_a).is_zero())
        throw CompositionNotZero("homology: d_b * d_a != 0");
}

// Coefficients of the columns of d_a in the Smith basis of ker(d_b).
// which_cols selects the kernel generators kept (all columns for the mod-p^N
// reading, at-cap columns only for the Witt-coefficient reading).
Matrix kernel_coordinates(const Matrix& d_a, const SmithForm& sf,
                          const std::vector<int>& which_cols) {
    const Ring ring = d_a.ring();
    const int N = ring.precision;
    Matrix y = sf.col_transform_inv * d_a;
    Matrix out(ring, static_cast<int>(which_cols.size()), d_a.cols());
    for (int c = 0; c < d_a.cols(); ++c) {
        for (int j = 0; j < y.rows(); ++j) {
            int d = sf.col_exponents[j];
            if (d >= N) continue;
            long long v = y.at(j, c);
            bool ok = d == 0 ? v == 0 : v % p_pow(ring, N - d) == 0;
            if (!ok) throw CompositionNotZero("homology: image not inside kernel");
        }
        for (size_t t = 0; t < which_cols.size(); ++t) {
            int j = which_cols[t];
            int d = sf.col_exponents[j];
            long long v = y.at(j, c);
            if (d < N) {
                long long denom = p_pow(ring, N - d);
                v = denom == 0 ? 0 : v / denom;
            }
            out.set(static_cast<int>(t), c, v);
        }
    }
    return out;
}

FinPModule module_from_row_exponents(const Ring& ring, const std::vector<int>& exps) {
    FinPModule h{ring.p, ring.precision, {}};
    for (int e : exps)
        if (e > 0) h.exponents.push_back(e);
    std::sort(h.exponents.begin(), h.exponents.end());
    return h;
}

}  // namespace

FinPModule homology(const Matrix& d_a, const Matrix& d_b) {
    check_three_term(d_a, d_b);
    const Ring ring = d_a.ring();
    SmithForm sf = smith_normal_form(d_b);

    // generators: column j of the Smith basis scaled by p^{N-d_j}, order p^{d_j}
    std::vector<int> gens;
    for (int j = 0; j < d_b.cols(); ++j)
        if (sf.col_exponents[j] > 0) gens.push_back(j);

    Matrix coords = kernel_coordinates(d_a, sf, gens);
    Matrix pres(ring, static_cast<int>(gens.size()),
                static_cast<int>(gens.size()) + d_a.cols());
    for (size_t t = 0; t < gens.size(); ++t)
        pres.set(static_cast<int>(t), static_cast<int>(t),
                 p_pow(ring, sf.col_exponents[gens[t]]));
    for (size_t t = 0; t < gens.size(); ++t)
        for (int c = 0; c < d_a.cols(); ++c)
            pres.set(static_cast<int>(t), static_cast<int>(gens.size()) + c,
                     coords.at(static_cast<int>(t), c));

    SmithForm q = smith_normal_form(pres);
    return module_from_row_exponents(ring, q.row_exponents);
}

FinPModule integral_homology(const Matrix& d_a, const Matrix& d_b) {
    check_three_term(d_a, d_b);
    const Ring ring = d_a.ring();
    const int N = ring.precision;
    SmithForm sf = smith_normal_form(d_b);

    std::vector<int> kernel_cols;
    for (int j = 0; j < d_b.cols(); ++j)
        if (sf.col_exponents[j] >= N) kernel_cols.push_back(j);

    Matrix coords = kernel_coordinates(d_a, sf, kernel_cols);
    SmithForm q = smith_normal_form(coords);
    return module_from_row_exponents(ring, q.row_exponents);
}

void Complex::validate() const {
    if (d.size() + 1 != dims.size() && !(dims.size() <= 1 && d.empty()))
        throw std::invalid_argument("Complex: differential count mismatch");
    for (size_t k = 0; k < d.size(); ++k) {
        if (d[k].cols() != dims[k] || d[k].rows() != dims[k + 1])
            throw std::invalid_argument("Complex: differential shape mismatch");
        if (d[k].ring() != ring) throw PrecisionMismatch("Complex: mixed rings");
        if (k + 1 < d.size() && !(d[k + 1] * d[k]).is_zero())
            throw CompositionNotZero("Complex: d*d != 0 at degree " + std::to_string(k));
    }
}

Complex fiber(const Complex& a, const Complex& b, const ChainMap& f) {
    if (a.ring != b.ring) throw PrecisionMismatch("fiber: mixed rings");
    const Ring ring = a.ring;
    auto dim_of = [](const Complex& c, int k) {
        return (k >= 0 && k < static_cast<int>(c.dims.size())) ? c.dims[k] : 0;
    };
    int n = std::max(static_cast<int>(a.dims.size()),
                     static_cast<int>(b.dims.size()) + 1);
    Complex t{ring, {}, {}};
    for (int k = 0; k < n; ++k) t.dims.push_back(dim_of(a, k) + dim_of(b, k - 1));
    for (int k = 0; k + 1 < n; ++k) {
        int ra = dim_of(a, k + 1), rb = dim_of(b, k);
        int ca = dim_of(a, k), cb = dim_of(b, k - 1);
        Matrix dk(ring, ra + rb, ca + cb);
        if (k < static_cast<int>(a.d.size()))
            for (int r = 0; r < ra; ++r)
                for (int c = 0; c < ca; ++c) dk.set(r, c, a.d[k].at(r, c));
        if (k < static_cast<int>(f.f.size()))
            for (int r = 0; r < rb; ++r)
                for (int c = 0; c < ca; ++c) dk.set(ra + r, c, f.f[k].at(r, c));
        if (k - 1 >= 0 && k - 1 < static_cast<int>(b.d.size()))
            for (int r = 0; r < rb; ++r)
                for (int c = 0; c < cb; ++c)
                    dk.set(ra + r, ca + c, -b.d[k - 1].at(r, c));
        t.d.push_back(dk);
    }
    t.validate();
    return t;
}

namespace {

template <typename Fn>
std::vector<FinPModule> per_degree_homology(const Complex& c, Fn&& h) {
    c.validate();
    std::vector<FinPModule> out;
    for (size_t k = 0; k < c.dims.size(); ++k) {
        Matrix left = k > 0 ? c.d[k - 1] : Matrix(c.ring, c.dims[k], 0);
        Matrix right = k < c.d.size() ? c.d[k] : Matrix(c.ring, 0, c.dims[k]);
        out.push_back(h(left, right));
    }
    return out;
}

}  // namespace

std::vector<FinPModule> integral_homology(const Complex& c) {
    return per_degree_homology(
        c, [](const Matrix& a, const Matrix& b) { return integral_homology(a, b); });
}

std::vector<FinPModule> homology(const Complex& c) {
    return per_degree_homology(
        c, [](const Matrix& a, const Matrix& b) { return homology(a, b); });
}

long long factorial_valuation(long long m, long long p) {
    long long v = 0;
    for (long long q = m / p; q > 0; q /= p) v += q;
    return v;
}

namespace {

struct UnitTable {
    std::vector<long long> prefix;  // prefix[r] = prod of units t <= r, mod p^N
    long long period_product;
};

const UnitTable& unit_table(const Ring& ring) {
    static std::mutex mu;
    static std::map<std::pair<long long, int>, UnitTable> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(ring.p, ring.precision);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    UnitTable t;
    t.prefix.assign(static_cast<size_t>(ring.modulus), 1);
    long long acc = 1;
    for (long long r = 1; r < ring.modulus; ++r) {
        if (r % ring.p != 0) acc = acc * r % ring.modulus;
        t.prefix[static_cast<size_t>(r)] = acc;
    }
    t.period_product = acc;
    return cache.emplace(key, std::move(t)).first->second;
}

}  // namespace

long long factorial_unit(long long m, Ring ring) {
    if (m < 0) throw std::invalid_argument("factorial_unit: negative argument");
    const UnitTable& t = unit_table(ring);
    long long u = 1;
    for (long long x = m; x > 0; x /= ring.p) {
        u = u * pow_mod(t.period_product, x / ring.modulus, ring.modulus) % ring.modulus;
        u = u * t.prefix[static_cast<size_t>(x % ring.modulus)] % ring.modulus;
    }
    return u;
}

long long mod_inverse(long long a, long long modulus) {
    a %= modulus;
    if (a < 0) a += modulus;
    long long t = 0, new_t = 1, r = modulus, new_r = a;
    while (new_r != 0) {
        long long q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    if (r != 1) throw std::domain_error("mod_inverse: not invertible");
    t %= modulus;
    return t < 0 ? t + modulus : t;
}

long long pow_mod(long long base, long long exp, long long modulus) {
    base %= modulus;
    if (base < 0) base += modulus;
    long long r = 1 % modulus;
    while (exp > 0) {
        if (exp & 1) r = r * base % modulus;
        base = base * base % modulus;
        exp >>= 1;
    }
    return r;
}

}  // namespace logsyn::padic
