#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "logsyn/errors.hpp"

namespace logsyn::witt {

using BigInt = boost::multiprecision::cpp_int;

// Element of W_n(F_p), stored by Witt coordinates in [0, p). The arithmetic
// lifts to unbounded integers, works on ghost components, and inverts; the
// roundtrip doubles as the integrality audit.
class WittVector {
public:
    WittVector(long long p, std::vector<long long> coords);

    long long prime() const { return p_; }
    size_t length() const { return a_.size(); }
    long long coord(size_t u) const { return a_[u]; }
    const std::vector<long long>& coords() const { return a_; }

    // ghost components g_t = sum_{u<=t} p^u a_u^{p^{t-u}} of the integer lift
    std::vector<BigInt> ghost() const;
    // inverse of the ghost map over Z, reduced mod p; throws NonIntegralUnghost
    static WittVector from_ghost(long long p, const std::vector<BigInt>& g);

    WittVector operator+(const WittVector& o) const;
    WittVector operator*(const WittVector& o) const;
    WittVector operator-() const;
    WittVector operator-(const WittVector& o) const { return *this + (-o); }
    bool operator==(const WittVector& o) const { return p_ == o.p_ && a_ == o.a_; }
    bool operator!=(const WittVector& o) const { return !(*this == o); }

    WittVector frobenius() const;     // W_n -> W_{n-1}, ghost shift g_t -> g_{t+1}
    WittVector verschiebung() const;  // W_n -> W_{n+1}, prepends a zero

    static WittVector teichmuller(long long p, size_t n, long long x);
    static WittVector from_integer(long long p, size_t n, long long k);
    static WittVector zero(long long p, size_t n);

    // ring isomorphism W_n(F_p) -> Z/p^n
    long long to_residue() const;

private:
    long long p_;
    std::vector<long long> a_;
};

WittVector ghost_roundtrip(const WittVector& w);

// Truncation set {1,...,m} split into Frobenius orbits: one component (j, s_j)
// per j coprime to p with s_j = #{t >= 0 : j p^t <= m}, so bW_m(k) decomposes
// as a product of W_{s_j}(k).
struct BigWittShape {
    long long p = 2;
    long long truncation = 0;
    std::vector<std::pair<long long, int>> components;  // sorted by j
};

BigWittShape ptypical_decomposition(long long p, long long m);

// smallest s >= 0 with j p^s >= e*i, i.e. max(ceil(log_p(e*i/j)), 0),
// by integer comparison only
int expected_torsion_exponent(long long p, long long e, long long i, long long j);

}  // namespace logsyn::witt
