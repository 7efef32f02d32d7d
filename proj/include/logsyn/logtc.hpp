#pragma once

#include <optional>
#include <string>
#include <vector>

#include "logsyn/syntomic.hpp"

namespace logsyn::logtc {

// Formal sum a*W(k) + bW_m(k); absent m means no big-Witt part.
struct Descriptor {
    int witt_count = 0;
    std::optional<long long> big_witt_m;

    bool is_zero() const { return witt_count == 0 && !big_witt_m; }
    bool operator==(const Descriptor& o) const {
        return witt_count == o.witt_count && big_witt_m == o.big_witt_m;
    }
    std::string to_string() const;
};

// pi_d of p-completed logTC by the graded-piece case split:
//   d = -1: W;  d = 0: W + W;  d = 1: W + bW_{e-1};
//   d = 2m-1 >= 3: bW_{em-1};  0 otherwise.
// bW_0 is dropped from the descriptor.
Descriptor homotopy_descriptor(long long e, long long d);

struct TableEntry {
    long long degree = 0;
    Descriptor descriptor;
    padic::FinPModule realization;
};

struct HomotopyTable {
    long long p = 2, e = 1;
    int precision = 2;
    long long lo = 0, hi = 0;
    std::vector<TableEntry> entries;
};

// Assembles pi_d for d in [lo, hi] from syntomic data (pi_d of gr^i picks up
// H^{2i-d} of Z_p^syn(i); pi_0 is the split sum of the two contributions) and
// cross-checks each entry against the case split; CrossCheckFailure on any
// disagreement.
HomotopyTable logtc_table(long long e, long long p, long long lo, long long hi, int N);

struct BigradedEntry {
    long long i = 0, j = 0;
    Descriptor descriptor;
    padic::FinPModule realization;
    bool generalized_from_e1 = false;  // case split is tabulated for e = 1; this entry extends it
};

// Bigraded reindexing: the entry at degree i - 2j of the homotopy table.
BigradedEntry motivic_bigraded(long long e, long long p, long long i, long long j, int N);

// realize a descriptor at precision N (at-cap per W, p-typical expansion per bW)
padic::FinPModule realize_descriptor(const Descriptor& d, long long p, int N);

}  // namespace logsyn::logtc
