#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "logsyn/prismatic.hpp"
#include "logsyn/report.hpp"
#include "logsyn/witt.hpp"

namespace logsyn::syntomic {

using PerDegree = std::array<padic::FinPModule, 3>;

struct OrbitResult {
    PerDegree h;
    long long stabilized_at = 0;  // cutoff at which two consecutive values agreed
};

// Homology of one orbit of Z_p^syn(i), stabilized in the cutoff: starting from
// M0 = expected torsion exponent + 2, the cutoff grows until two consecutive
// values agree; StabilizationFailure beyond M0 + 8.
OrbitResult syntomic_orbit(const prismatic::ModelParams& params, long long i, long long j);

struct SyntomicResult {
    prismatic::ModelParams params;
    long long i = 0;
    long long orbit_bound = 0;
    PerDegree h;                              // direct sum over orbits
    std::map<long long, OrbitResult> orbits;  // j -> contribution (0 = weight-0 orbit)
};

// Direct sum over the weight-0 orbit and all orbits j <= j_bound coprime to p.
// Orbits predicted to vanish (expected torsion exponent 0, j >= 1) are
// verified to contribute nothing; UnexpectedOrbitContribution otherwise.
SyntomicResult syntomic_total(const prismatic::ModelParams& params, long long i,
                              long long j_bound);

enum class SummandKind { witt_ring, big_witt };  // W(k) vs bW_m(k)

struct Summand {
    int degree = 0;
    SummandKind kind = SummandKind::witt_ring;
    long long m = 0;  // truncation for big_witt
};

// The three-case closed form: i = 0 gives W + W[-1]; i = 1 gives
// bW_{e-1}[-1] + W[-1] + W[-2]; i > 1 gives bW_{ei-1}[-1].
struct ClosedForm {
    long long e = 1, i = 0;
    std::vector<Summand> summands;
};

ClosedForm closed_form(long long e, long long i);

// Exponent multisets per degree at a given precision: W becomes one at-cap
// factor and bW_m expands p-typically to min(s_j, N) per component.
std::array<std::vector<int>, 3> expand_closed_form(const ClosedForm& cf, long long p, int N);

// PASS iff the computed multisets match the expansion at both N and N+1 (so
// at-cap counts grow exactly for the W summands and torsion stays put).
Report compare(const SyntomicResult& at_n, const SyntomicResult& at_n_plus_1,
               const ClosedForm& cf);

// Precision-level content of Q_p^syn(i)(k[x]/x^e, N) = Q_p^syn(i)(k, N):
// weight-0 parts agree with the e = 1 model and every positive-weight orbit is
// torsion below the cap.
Report nil_invariance_check(long long e, long long p, long long i, int N);

// Total complex of the square with corners k[x], k, (k[x],N), (k,N): homology
// must be all-torsion below the cap (rational cartesianness), the weight-0
// relative terms must match the i = 1 exceptional identification, and the
// integral homology is reported as data.
Report descent_square_check(long long p, long long i, int N);

// largest expected torsion exponent over contributing orbits
int max_torsion_exponent(long long p, long long e, long long i, long long j_bound);
int default_precision(long long p, long long e, long long i);      // s_max + 3
long long default_orbit_bound(long long p, long long e, long long i);  // e*i + p

std::string module_to_string(const padic::FinPModule& m);

}  // namespace logsyn::syntomic
