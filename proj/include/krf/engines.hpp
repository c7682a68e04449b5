#pragma once

#include "krf/fdual.hpp"
#include "krf/fermionic.hpp"
#include "krf/gmod.hpp"
#include "krf/pbw.hpp"
#include "krf/rep.hpp"

#include <optional>
#include <string>
#include <vector>

namespace krf {

struct EngineSelection {
    bool fermionic = true;
    bool module = true;
    bool pbw = true;
    bool dual = true;
};

struct GammaRow {
    RootVector gamma;
    std::optional<Int> fermionic;
    std::optional<Int> module_count;
    std::optional<Int> pbw_count;
    std::optional<Int> dual_count;
    std::vector<std::pair<long, long>> pbw_trace;
    std::vector<std::pair<long, long>> dual_trace;
    bool stabilized = true;
    bool agree = true;
};

struct VerifyReport {
    std::string type_label;
    KRSpec spec;
    std::vector<std::string> engines_run;
    std::vector<GammaRow> rows;
    bool module_available = false;
    bool all_agree = true;
    bool all_stabilized = true;
    Int fermionic_total_value = 0;
    Int weyl_dim_product = 0; // product of the single-factor dimensions
};

// True when the evaluation realization of every factor is certified.
bool module_engine_available(const CartanData& cd);

// Cross-engine multiplicity verification over all gamma with
// lambda - gamma dominant. jobs > 1 fans the per-gamma work out.
VerifyReport run_verify(const CartanData& cd, const KRSpec& spec, const EngineSelection& sel,
                        int jobs = 1, bool inject_disagreement = false);

// Fusion product of the spec's factors at the given points (defaults to
// 0,1,...,p-1 when empty).
GradedModule build_fusion(const CartanData& cd, const KRSpec& spec,
                          std::vector<Rat> points = {});

std::vector<Rat> default_points(std::size_t p, int variant = 0);

} // namespace krf
