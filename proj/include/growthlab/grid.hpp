#pragma once

#include <chrono>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "growthlab/characters.hpp"
#include "growthlab/common.hpp"
#include "growthlab/family.hpp"
#include "growthlab/proof_lab.hpp"
#include "growthlab/report.hpp"

namespace growthlab {

struct GridCell {
    std::string audit; // thm1 | lemma2 | ruzsa | anchor | extremal
    FamilySpec spec;
};

// Per-cell seed derived from the master seed and the cell index: one
// SplitMix64 step of (master XOR index * golden ratio). Cells stay
// reproducible independent of scheduling.
inline u64 derive_cell_seed(u64 master_seed, u64 index) {
    return SplitMix64(master_seed ^ (index * 0x9e3779b97f4a7c15ull)).next();
}

inline ExperimentReport run_grid_cell(const GridCell& cell, u64 run_id) {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentReport r;
    r.run_id = run_id;
    r.audit = cell.audit;
    r.p = cell.spec.p;
    r.seed = cell.spec.seed;

    auto finish = [&](double lhs, double rhs, bool pass) {
        r.lhs = lhs;
        r.rhs = rhs;
        r.ratio = rhs == 0.0 ? 0.0 : lhs / rhs;
        r.pass = pass;
        r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                        .count();
        return r;
    };

    if (cell.audit == "thm1") {
        const FpSet a = generate_family(cell.spec);
        const Theorem1Report rep = theorem1_exponent(a);
        r.size_a = rep.size_a;
        r.card_shifted = rep.size_shifted;
        return finish(rep.beta, 106.0 / 105.0, rep.above);
    }
    if (cell.audit == "lemma2") {
        const FpSet a = generate_family(cell.spec);
        const Lemma2Report rep = lemma2_audit(a);
        r.size_a = rep.size_a;
        r.card_diff = rep.size_diff;
        r.card_shifted = rep.size_shifted;
        return finish(rep.exponent, 13.0, rep.above_13);
    }
    if (cell.audit == "ruzsa") {
        const FpSet a = generate_family(cell.spec, {0, cell.spec.p - 1});
        const RuzsaReport rep = ruzsa_mult_audit(a);
        r.size_a = rep.size_a;
        r.card_shifted = rep.size_shifted;
        return finish(static_cast<double>(rep.size_aa) * rep.size_a,
                      static_cast<double>(rep.size_shifted) * rep.size_shifted, rep.ok);
    }
    if (cell.audit == "anchor") {
        const FpSet a = generate_family(cell.spec, {0, cell.spec.p - 1});
        const auto [b0, total] = popular_anchor(a);
        (void)b0;
        const u64 shifted = shifted_product(a).size();
        r.size_a = a.size();
        r.card_shifted = shifted;
        return finish(static_cast<double>(total) * shifted,
                      static_cast<double>(a.size()) * a.size() * a.size(), true);
    }
    if (cell.audit == "extremal") {
        const ExtremalResult res = build_extremal_set(cell.spec.p, cell.spec.size);
        const ExtremalReport rep = verify_extremal(res);
        if (!rep.pass) throw audit_error("grid extremal cell failed: " + rep.detail);
        r.size_a = res.a.size();
        r.card_shifted = rep.product_size;
        return finish(static_cast<double>(rep.product_size),
                      std::sqrt(static_cast<double>(cell.spec.p) * res.a.size()), true);
    }
    throw std::invalid_argument("run_grid_cell: unknown audit kind " + cell.audit);
}

// Executes the plan in order; reports come back in plan order. Any fatal
// audit error aborts with the offending cell named.
inline std::vector<ExperimentReport> run_grid(std::vector<GridCell> plan, u64 master_seed) {
    std::vector<ExperimentReport> reports;
    reports.reserve(plan.size());
    for (std::size_t i = 0; i < plan.size(); ++i) {
        plan[i].spec.seed = derive_cell_seed(master_seed, i);
        try {
            reports.push_back(run_grid_cell(plan[i], i));
        } catch (const audit_error& e) {
            throw audit_error("grid cell " + std::to_string(i) + " (" + plan[i].audit +
                              "): " + e.what());
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("grid cell " + std::to_string(i) + " (" + plan[i].audit +
                                        "): " + e.what());
        }
    }
    return reports;
}

struct GridSummary {
    std::map<std::string, double> min_ratio;
    std::map<std::string, double> median_ratio;
    bool all_pass = true;
};

inline GridSummary summarize_grid(const std::vector<ExperimentReport>& reports) {
    GridSummary s;
    std::map<std::string, std::vector<double>> by_kind;
    for (const ExperimentReport& r : reports) {
        by_kind[r.audit].push_back(r.ratio);
        s.all_pass = s.all_pass && r.pass;
    }
    for (auto& [kind, ratios] : by_kind) {
        std::sort(ratios.begin(), ratios.end());
        s.min_ratio[kind] = ratios.front();
        s.median_ratio[kind] = ratios[ratios.size() / 2];
    }
    return s;
}

} // namespace growthlab
