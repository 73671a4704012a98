#pragma once

#include "tripoly/dualnum.hpp"
#include "tripoly/structure.hpp"

namespace tripoly {

struct CheckResult {
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    std::string detail;  // JSON text
};

struct VerifyOptions {
    int n = 2;
    u64 seed = 0x7269;
    int jobs = 0;  // 0 picks the hardware concurrency
    std::size_t group_cap = 100000;
    int samples = 200;
};

/// The full verification bundle for one ring: closure counts, counting ratios,
/// the order formula with materialization, the unit-group comparison, group
/// classification, the split decompositions, inverse round-trips, criterion
/// cross-checks, and the dual-number embeddings.
std::vector<CheckResult> verify_all(const RingPtr& ring, const VerifyOptions& opts);

/// Individual bundles reused by the command-line tool.
CheckResult check_counts(const RingPtr& ring, int k);
CheckResult check_ratios(const RingPtr& ring, int k);
CheckResult check_order(const RingPtr& ring, int n, std::size_t cap, int jobs);
CheckResult check_tr_vs_mt(const RingPtr& ring, int n, std::size_t cap);
CheckResult check_group_props(const RingPtr& ring, int n, std::size_t cap);
CheckResult check_decomposition(const RingPtr& ring, int n, DecompositionLevel level, int jobs,
                                u64 seed, int samples);
CheckResult check_units_semidirect(const RingPtr& ring);
CheckResult check_inverse_roundtrips(const RingPtr& ring, int n, u64 seed, int samples);
CheckResult check_permutation_criteria(const RingPtr& ring, u64 seed, int samples);
CheckResult check_dual_numbers(const RingPtr& ring, u64 seed, int samples);
CheckResult check_nounitrep(const RingPtr& ring);

std::string results_to_json(const std::vector<CheckResult>& results);

}  // namespace tripoly
