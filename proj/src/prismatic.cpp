#include "logsyn/prismatic.hpp"

#include <algorithm>
#include <string>

namespace logsyn::prismatic {

using padic::Matrix;
using padic::Ring;
using padic::Scalar;

long long weight_quotient(const ModelParams& params, long long n) {
    if (n < 0) throw std::invalid_argument("weight_quotient: negative weight");
    return params.e ? n / *params.e : 0;
}

bool has_degree_one(const ModelParams& params, long long weight) {
    return params.log_basis || weight >= 1;
}

int nygaard_exponent(const ModelParams& params, long long i, int degree, long long weight) {
    if (degree != 0 && degree != 1)
        throw std::invalid_argument("nygaard_exponent: degree must be 0 or 1");
    if (degree == 1 && !has_degree_one(params, weight))
        throw NoSuchBasisElement("nygaard_exponent: no degree-1 element at weight 0");
    long long a;
    if (degree == 0) {
        a = i - weight_quotient(params, weight);
    } else if (params.log_basis) {
        a = i - weight_quotient(params, weight) - 1;
    } else {
        a = i - weight_quotient(params, weight - 1) - 1;
    }
    return static_cast<int>(std::max(a, 0LL));
}

long long differential_coeff(const ModelParams& params, long long weight) {
    if (params.log_basis) return weight;  // d(x^n/q!) = n (x^n/q!) dlog x
    if (weight < 1)
        throw NoSuchBasisElement("differential_coeff: nonlog model needs weight >= 1");
    if (!params.e) return weight;
    // n * q(n-1)!/q(n)! = n unless e | n, where it collapses to e
    return weight % *params.e != 0 ? weight : *params.e;
}

namespace {

// p^k * u mod p^N as a scalar; k >= N just gives 0
Scalar scaled_unit(const Ring& ring, long long k, long long unit) {
    if (k >= ring.precision) return Scalar::zero(ring);
    Scalar s = Scalar::p_power(ring, k);
    return s * Scalar(ring, unit);
}

// valuation and unit of q(a)!/q(b)! with a >= b
std::pair<long long, long long> factorial_ratio(const Ring& ring, long long a, long long b) {
    long long val = padic::factorial_valuation(a, ring.p) - padic::factorial_valuation(b, ring.p);
    long long unit = padic::factorial_unit(a, ring) *
                     padic::mod_inverse(padic::factorial_unit(b, ring), ring.modulus) %
                     ring.modulus;
    return {val, unit};
}

}  // namespace

FrobeniusImage frobenius_coeff(const ModelParams& params, long long i, int degree,
                               long long weight) {
    const Ring ring = params.ring();
    int alpha = nygaard_exponent(params, i, degree, weight);
    long long num, den, explicit_p;
    if (degree == 0) {
        num = weight_quotient(params, params.p * weight);
        den = weight_quotient(params, weight);
        explicit_p = 0;
    } else if (params.log_basis) {
        num = weight_quotient(params, params.p * weight);
        den = weight_quotient(params, weight);
        explicit_p = 1;  // phi(dlog x) = p dlog x
    } else {
        num = weight_quotient(params, params.p * weight - 1);
        den = weight_quotient(params, weight - 1);
        explicit_p = 1;  // phi(dx) = p x^{p-1} dx
    }
    auto [val, unit] = factorial_ratio(ring, num, den);
    long long net = alpha - i + val + explicit_p;
    if (net < 0)
        throw NegativeDividedPower("frobenius_coeff: net exponent " + std::to_string(net) +
                                   " at degree " + std::to_string(degree) + ", weight " +
                                   std::to_string(weight));
    return FrobeniusImage{params.p * weight, scaled_unit(ring, net, unit)};
}

OrbitComplex orbit_fiber_complex(const ModelParams& params, long long i, long long j,
                                 long long cutoff) {
    if (i < 0) throw std::invalid_argument("orbit_fiber_complex: i must be >= 0");
    if (j < 0 || (j > 0 && j % params.p == 0))
        throw std::invalid_argument("orbit_fiber_complex: j must be 0 or coprime to p");
    const Ring ring = params.ring();

    OrbitComplex oc;
    oc.params = params;
    oc.index_i = i;
    oc.orbit_j = j;
    oc.cutoff = j == 0 ? 0 : cutoff;
    if (j == 0) {
        oc.weights = {0};
    } else {
        long long w = j;
        for (long long m = 0; m <= cutoff; ++m, w *= params.p) oc.weights.push_back(w);
    }
    for (long long w : oc.weights)
        if (has_degree_one(params, w)) oc.degree_one_weights.push_back(w);

    const int nw = static_cast<int>(oc.weights.size());
    const int n1 = static_cast<int>(oc.degree_one_weights.size());
    auto deg1_pos = [&](long long w) {
        auto it = std::find(oc.degree_one_weights.begin(), oc.degree_one_weights.end(), w);
        return it == oc.degree_one_weights.end()
                   ? -1
                   : static_cast<int>(it - oc.degree_one_weights.begin());
    };
    // phi target slot within the orbit; -1 once truncated
    auto target_slot = [&](int m) {
        if (j == 0) return 0;
        return m + 1 < nw ? m + 1 : -1;
    };

    Matrix d0(ring, n1 + nw, nw);   // rows: g1 block then b0 block
    Matrix d1(ring, n1, n1 + nw);   // rows: b1 block

    for (int m = 0; m < nw; ++m) {
        long long w = oc.weights[m];
        int a0 = nygaard_exponent(params, i, 0, w);
        // d_F(g0) = p^{a0-a1} c_d(w) g1
        if (int r = deg1_pos(w); r >= 0) {
            int a1 = nygaard_exponent(params, i, 1, w);
            Scalar c = Scalar::p_power(ring, a0 - a1) * Scalar(ring, differential_coeff(params, w) % ring.modulus);
            d0.add_at(r, m, c.residue());
        }
        // f0 = phi/p^i - can on degree 0
        d0.add_at(n1 + m, m, -Scalar::p_power(ring, a0).residue());
        if (int t = target_slot(m); t >= 0) {
            FrobeniusImage im = frobenius_coeff(params, i, 0, w);
            d0.add_at(n1 + t, m, im.scalar.residue());
        }
    }
    for (int m = 0; m < nw; ++m) {
        long long w = oc.weights[m];
        if (int r = deg1_pos(w); r >= 0) {
            int a1 = nygaard_exponent(params, i, 1, w);
            // f1 on the Fil_1 column
            d1.add_at(r, r, -Scalar::p_power(ring, a1).residue());
            if (int t = target_slot(m); t >= 0) {
                int rt = deg1_pos(oc.weights[t]);
                if (rt >= 0) {
                    FrobeniusImage im = frobenius_coeff(params, i, 1, w);
                    d1.add_at(rt, r, im.scalar.residue());
                }
            }
            // -d on the Full_0 column
            d1.add_at(r, n1 + m, -(differential_coeff(params, w) % ring.modulus));
        }
    }

    oc.total = padic::Complex{ring, {nw, n1 + nw, n1}, {d0, d1}};
    oc.total.validate();  // CompositionNotZero if d1 * d0 != 0
    return oc;
}

padic::Scalar comparison_coeff(const ModelParams& src, const ModelParams& dst, int degree,
                               long long weight) {
    if (src.p != dst.p || src.precision != dst.precision)
        throw PrecisionMismatch("comparison_coeff: mixed rings");
    if (src.log_basis && !dst.log_basis)
        throw NoSuchBasisElement("comparison_coeff: no map from log to nonlog basis");
    const Ring ring = src.ring();
    long long num, den;
    if (degree == 0) {
        num = weight_quotient(dst, weight);
        den = weight_quotient(src, weight);
    } else {
        if (!has_degree_one(src, weight))
            throw NoSuchBasisElement("comparison_coeff: source has no degree-1 element");
        num = dst.log_basis ? weight_quotient(dst, weight) : weight_quotient(dst, weight - 1);
        den = src.log_basis ? weight_quotient(src, weight) : weight_quotient(src, weight - 1);
    }
    if (num < den)
        throw std::invalid_argument("comparison_coeff: map would need fractional coefficients");
    auto [val, unit] = [&] {
        long long v = padic::factorial_valuation(num, ring.p) -
                      padic::factorial_valuation(den, ring.p);
        long long u = padic::factorial_unit(num, ring) *
                      padic::mod_inverse(padic::factorial_unit(den, ring), ring.modulus) %
                      ring.modulus;
        return std::pair<long long, long long>{v, u};
    }();
    return scaled_unit(ring, val, unit);
}

padic::ChainMap comparison_map(const OrbitComplex& src, const OrbitComplex& dst) {
    if (src.orbit_j != dst.orbit_j || src.index_i != dst.index_i ||
        src.weights != dst.weights)
        throw std::invalid_argument("comparison_map: orbits disagree");
    const Ring ring = src.params.ring();
    const long long i = src.index_i;
    const int nw = static_cast<int>(src.weights.size());
    const int n1s = static_cast<int>(src.degree_one_weights.size());
    const int n1d = static_cast<int>(dst.degree_one_weights.size());

    auto pos_in = [](const std::vector<long long>& v, long long w) {
        auto it = std::find(v.begin(), v.end(), w);
        return it == v.end() ? -1 : static_cast<int>(it - v.begin());
    };

    Matrix f0(ring, nw, nw);
    Matrix f1(ring, n1d + nw, n1s + nw);
    Matrix f2(ring, n1d, n1s);
    for (int m = 0; m < nw; ++m) {
        long long w = src.weights[m];
        Scalar c0 = comparison_coeff(src.params, dst.params, 0, w);
        int a_src = nygaard_exponent(src.params, i, 0, w);
        int a_dst = nygaard_exponent(dst.params, i, 0, w);
        long long shift = a_src - a_dst + c0.valuation();
        if (shift < 0)
            throw NegativeDividedPower("comparison_map: filtration not preserved (degree 0)");
        Scalar fil0 = c0.is_zero() ? Scalar::zero(ring)
                                   : scaled_unit(ring, shift, c0.unit_part().residue());
        f0.set(m, m, fil0.residue());
        f1.set(n1d + m, n1s + m, c0.residue());

        int rs = pos_in(src.degree_one_weights, w);
        if (rs < 0) continue;
        int rd = pos_in(dst.degree_one_weights, w);
        Scalar c1 = comparison_coeff(src.params, dst.params, 1, w);
        int b_src = nygaard_exponent(src.params, i, 1, w);
        int b_dst = nygaard_exponent(dst.params, i, 1, w);
        long long shift1 = b_src - b_dst + c1.valuation();
        if (shift1 < 0)
            throw NegativeDividedPower("comparison_map: filtration not preserved (degree 1)");
        Scalar fil1 = c1.is_zero() ? Scalar::zero(ring)
                                   : scaled_unit(ring, shift1, c1.unit_part().residue());
        f1.set(rd, rs, fil1.residue());
        f2.set(rd, rs, c1.residue());
    }
    return padic::ChainMap{{f0, f1, f2}};
}

}  // namespace logsyn::prismatic
