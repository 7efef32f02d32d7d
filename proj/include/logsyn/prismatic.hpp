#pragma once

#include <optional>
#include <vector>

#include "logsyn/padic.hpp"

namespace logsyn::prismatic {

// Weight-graded two-term model of Nygaard-completed log prismatic cohomology.
// Degree-0 weight-n basis element is x^n / q(n)! with q(n) = floor(n/e)
// (q == 0 when e is absent); degree-1 is x^n/q(n)! dlog x in the log basis and
// x^{n-1}/q(n-1)! dx otherwise.
//
//   (e = 1, log)      the log point (k, N)
//   (e finite, log)   (k[x]/x^e, N)
//   (absent, log)     (k[x], N)
//   (absent, nonlog)  k[x]
//   (e = 1, nonlog)   k
struct ModelParams {
    long long p = 2;
    std::optional<long long> e;  // divided-power period; absent = plain polynomial
    bool log_basis = true;
    int precision = 2;

    padic::Ring ring() const { return padic::Ring::make(p, precision); }
    bool operator==(const ModelParams& o) const {
        return p == o.p && e == o.e && log_basis == o.log_basis && precision == o.precision;
    }
};

long long weight_quotient(const ModelParams& params, long long n);  // q(n)

// whether the model has a degree-1 basis element at this weight
bool has_degree_one(const ModelParams& params, long long weight);

// Nygaard exponent of the weight-n piece in the given cohomological degree:
// alpha0 = max(i - q(n), 0), alpha1 = max(i - q(n) - 1, 0) (log) or
// max(i - q(n-1) - 1, 0) (nonlog). Throws NoSuchBasisElement where the model
// has no such generator.
int nygaard_exponent(const ModelParams& params, long long i, int degree, long long weight);

// d(b0_n) = c_d(n) b1_n with c_d(n) = n in the log basis and the exact integer
// n * q(n-1)!/q(n)! otherwise.
long long differential_coeff(const ModelParams& params, long long weight);

struct FrobeniusImage {
    long long target_weight;  // p * weight
    padic::Scalar scalar;     // exact p-power times unit, mod p^N
};

// phi/p^i on the Nygaard generator p^alpha b at (degree, weight); phi sends
// x to x^p and dlog x to p dlog x. The scalar is p^{alpha - i + v_p(c_phi)}
// times the unit part of the factorial ratio, with valuations taken by
// Legendre's formula; a negative net exponent throws NegativeDividedPower.
FrobeniusImage frobenius_coeff(const ModelParams& params, long long i, int degree,
                               long long weight);

// Mapping fiber of (phi/p^i - can) on the orbit {j, jp, ..., j p^cutoff}
// (j = 0 is the weight-0 orbit; cutoff ignored there). Total complex:
//   T0 = Fil_0 per weight
//   T1 = Fil_1 per weight ++ Full_0 per weight
//   T2 = Full_1 per weight
// with D(a, b) = (da, f(a) - db); phi-images beyond the last weight are
// dropped.
struct OrbitComplex {
    ModelParams params;
    long long index_i = 0;
    long long orbit_j = 0;
    long long cutoff = 0;
    std::vector<long long> weights;
    std::vector<long long> degree_one_weights;  // subset carrying a degree-1 element
    padic::Complex total;                       // dims {|T0|, |T1|, |T2|}
};

OrbitComplex orbit_fiber_complex(const ModelParams& params, long long i, long long j,
                                 long long cutoff);

// Full-side scalar of the canonical comparison map src -> dst at one
// (degree, weight): the ratio of denominator factorials, e.g. x^n maps to
// q_dst(n)! (x^n/q_dst(n)!) and x^{n-1} dx = x^n dlog x. Requires the map to
// exist (a log source needs a log target; divided powers only increase).
padic::Scalar comparison_coeff(const ModelParams& src, const ModelParams& dst, int degree,
                               long long weight);

// The induced map of orbit fiber complexes (same orbit, same i, same cutoff).
padic::ChainMap comparison_map(const OrbitComplex& src, const OrbitComplex& dst);

}  // namespace logsyn::prismatic
