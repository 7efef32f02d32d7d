#include "logsyn/witt.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace logsyn::witt {

namespace {

BigInt big_pow(const BigInt& base, long long exp) {
    BigInt r = 1, b = base;
    while (exp > 0) {
        if (exp & 1) r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

}  // namespace

WittVector::WittVector(long long p, std::vector<long long> coords)
    : p_(p), a_(std::move(coords)) {
    if (p < 2) throw std::invalid_argument("WittVector: p must be >= 2");
    for (auto& c : a_) {
        c %= p_;
        if (c < 0) c += p_;
    }
}

std::vector<BigInt> WittVector::ghost() const {
    std::vector<BigInt> g(a_.size());
    for (size_t t = 0; t < a_.size(); ++t) {
        BigInt s = 0;
        BigInt pu = 1;
        for (size_t u = 0; u <= t; ++u) {
            s += pu * big_pow(BigInt(a_[u]), big_pow(BigInt(p_), static_cast<long long>(t - u)).convert_to<long long>());
            pu *= p_;
        }
        g[t] = s;
    }
    return g;
}

WittVector WittVector::from_ghost(long long p, const std::vector<BigInt>& g) {
    std::vector<BigInt> a(g.size());
    BigInt pt = 1;
    for (size_t t = 0; t < g.size(); ++t) {
        BigInt rem = g[t];
        BigInt pu = 1;
        for (size_t u = 0; u < t; ++u) {
            rem -= pu * big_pow(a[u], big_pow(BigInt(p), static_cast<long long>(t - u)).convert_to<long long>());
            pu *= p;
        }
        if (rem % pt != 0)
            throw NonIntegralUnghost("from_ghost: component " + std::to_string(t) +
                                     " not divisible by p^t");
        a[t] = rem / pt;
        pt *= p;
    }
    std::vector<long long> out(a.size());
    for (size_t t = 0; t < a.size(); ++t) {
        BigInt r = a[t] % p;
        if (r < 0) r += p;
        out[t] = r.convert_to<long long>();
    }
    return WittVector(p, out);
}

WittVector WittVector::operator+(const WittVector& o) const {
    if (p_ != o.p_ || a_.size() != o.a_.size())
        throw std::invalid_argument("WittVector+: mismatched prime or length");
    auto g1 = ghost(), g2 = o.ghost();
    for (size_t t = 0; t < g1.size(); ++t) g1[t] += g2[t];
    return from_ghost(p_, g1);
}

WittVector WittVector::operator*(const WittVector& o) const {
    if (p_ != o.p_ || a_.size() != o.a_.size())
        throw std::invalid_argument("WittVector*: mismatched prime or length");
    auto g1 = ghost(), g2 = o.ghost();
    for (size_t t = 0; t < g1.size(); ++t) g1[t] *= g2[t];
    return from_ghost(p_, g1);
}

WittVector WittVector::operator-() const {
    auto g = ghost();
    for (auto& v : g) v = -v;
    return from_ghost(p_, g);
}

WittVector WittVector::frobenius() const {
    if (a_.empty()) return *this;
    auto g = ghost();
    std::vector<BigInt> shifted(g.begin() + 1, g.end());
    return from_ghost(p_, shifted);
}

WittVector WittVector::verschiebung() const {
    std::vector<long long> out(a_.size() + 1, 0);
    for (size_t u = 0; u < a_.size(); ++u) out[u + 1] = a_[u];
    return WittVector(p_, out);
}

WittVector WittVector::teichmuller(long long p, size_t n, long long x) {
    std::vector<long long> c(n, 0);
    if (n > 0) c[0] = x;
    return WittVector(p, c);
}

WittVector WittVector::from_integer(long long p, size_t n, long long k) {
    std::vector<BigInt> g(n, BigInt(k));
    return from_ghost(p, g);
}

WittVector WittVector::zero(long long p, size_t n) {
    return WittVector(p, std::vector<long long>(n, 0));
}

long long WittVector::to_residue() const {
    if (a_.empty()) return 0;
    auto g = ghost();
    BigInt pn = big_pow(BigInt(p_), static_cast<long long>(a_.size()));
    BigInt r = g.back() % pn;
    if (r < 0) r += pn;
    return r.convert_to<long long>();
}

WittVector ghost_roundtrip(const WittVector& w) {
    return WittVector::from_ghost(w.prime(), w.ghost());
}

BigWittShape ptypical_decomposition(long long p, long long m) {
    if (m < 0) throw std::invalid_argument("ptypical_decomposition: m must be >= 0");
    BigWittShape shape{p, m, {}};
    for (long long j = 1; j <= m; ++j) {
        if (j % p == 0) continue;
        int s = 0;
        for (long long v = j; v <= m; v *= p) ++s;
        shape.components.emplace_back(j, s);
    }
    return shape;
}

int expected_torsion_exponent(long long p, long long e, long long i, long long j) {
    if (j < 1 || j % p == 0)
        throw std::invalid_argument("expected_torsion_exponent: j must be >= 1 and coprime to p");
    int s = 0;
    long long v = j;
    while (v < e * i) {
        v *= p;
        ++s;
    }
    return s;
}

}  // namespace logsyn::witt
