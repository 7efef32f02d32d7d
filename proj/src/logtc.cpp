#include "logsyn/logtc.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace logsyn::logtc {

using padic::FinPModule;

std::string Descriptor::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    for (int t = 0; t < witt_count; ++t) os << (t ? " + " : "") << "W";
    if (big_witt_m) {
        if (witt_count) os << " + ";
        os << "bW_" << *big_witt_m;
    }
    return os.str();
}

Descriptor homotopy_descriptor(long long e, long long d) {
    if (d == -1) return {1, std::nullopt};
    if (d == 0) return {2, std::nullopt};
    if (d == 1) return e > 1 ? Descriptor{1, e - 1} : Descriptor{1, std::nullopt};
    if (d >= 3 && d % 2 == 1) {
        long long m = (d + 1) / 2;
        return {0, e * m - 1};
    }
    return {0, std::nullopt};
}

FinPModule realize_descriptor(const Descriptor& d, long long p, int N) {
    FinPModule out{p, N, {}};
    for (int t = 0; t < d.witt_count; ++t) out.exponents.push_back(N);
    if (d.big_witt_m)
        for (auto [j, sj] : witt::ptypical_decomposition(p, *d.big_witt_m).components)
            out.exponents.push_back(std::min(sj, N));
    std::sort(out.exponents.begin(), out.exponents.end());
    return out;
}

HomotopyTable logtc_table(long long e, long long p, long long lo, long long hi, int N) {
    if (lo > hi) throw std::invalid_argument("logtc_table: empty degree range");
    HomotopyTable table{p, e, N, lo, hi, {}};
    prismatic::ModelParams params{p, e, true, N};

    // syntomic indices feeding degrees in range: pi_d picks up H^{2i-d}(syn(i))
    std::map<long long, syntomic::SyntomicResult> syn;
    long long i_max = std::max<long long>(0, (hi + 2) / 2);
    for (long long i = 0; i <= i_max; ++i)
        syn.emplace(i, syntomic::syntomic_total(params, i,
                                                syntomic::default_orbit_bound(p, e, i)));

    for (long long d = lo; d <= hi; ++d) {
        FinPModule assembled{p, N, {}};
        for (long long i = 0; i <= i_max; ++i) {
            long long cdeg = 2 * i - d;
            if (cdeg < 0 || cdeg > 2) continue;
            const FinPModule& part = syn.at(i).h[static_cast<size_t>(cdeg)];
            assembled.exponents.insert(assembled.exponents.end(), part.exponents.begin(),
                                       part.exponents.end());
        }
        std::sort(assembled.exponents.begin(), assembled.exponents.end());

        Descriptor desc = homotopy_descriptor(e, d);
        FinPModule expected = realize_descriptor(desc, p, N);
        if (assembled != expected) {
            std::ostringstream os;
            os << "logtc_table: pi_" << d << " assembled "
               << syntomic::module_to_string(assembled) << " but case split gives "
               << desc.to_string() << " = " << syntomic::module_to_string(expected)
               << " (p=" << p << " e=" << e << " N=" << N << ")";
            throw CrossCheckFailure(os.str());
        }
        table.entries.push_back({d, desc, assembled});
    }
    return table;
}

BigradedEntry motivic_bigraded(long long e, long long p, long long i, long long j, int N) {
    Descriptor desc = homotopy_descriptor(e, i - 2 * j);
    return BigradedEntry{i, j, desc, realize_descriptor(desc, p, N), e != 1};
}

}  // namespace logsyn::logtc
