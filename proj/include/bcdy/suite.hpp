// The check registry: every verification the workbench knows how to run,
// as individually callable functions returning check records, plus the
// suite driver and the series emitters behind the command line.
#pragma once

#include "bcdy/report.hpp"

namespace bcdy {

namespace checks {

CheckRecord rmatrix_operator_identities(const AlgebraContext& ctx);
CheckRecord rmatrix_yang_baxter(const AlgebraContext& ctx);
CheckRecord rmatrix_inversion(const AlgebraContext& ctx);

CheckRecord fseries_leading(const AlgebraContext& ctx);
CheckRecord fseries_relations(const AlgebraContext& ctx, int order);
CheckRecord fseries_uniqueness(const AlgebraContext& ctx);

CheckRecord rbar_unitarity(const AlgebraContext& ctx);
CheckRecord rbar_crossing(const AlgebraContext& ctx);
CheckRecord rbar_primed_reflection(const AlgebraContext& ctx);
CheckRecord rbar_yang_baxter(const AlgebraContext& ctx);

CheckRecord brauer_projector(const AlgebraContext& ctx, int mmax);
CheckRecord brauer_fusion_match(const AlgebraContext& ctx, int mmax);
CheckRecord brauer_trace_reduction(const AlgebraContext& ctx, int mmax);
CheckRecord brauer_conjugation(const AlgebraContext& ctx, int mmax);
CheckRecord brauer_conjugation_control(const AlgebraContext& ctx);

CheckRecord classical_structure(const AlgebraContext& ctx);
CheckRecord classical_confluence(const AlgebraContext& ctx, unsigned seed);
CheckRecord classical_trace_polynomials(const AlgebraContext& ctx);
CheckRecord classical_weight2_centrality(const AlgebraContext& ctx, int probe_depth);
CheckRecord classical_weight2_level_control(const AlgebraContext& ctx, int probe_depth);

CheckRecord engine_compile(const AlgebraContext& ctx);
CheckRecord engine_leading_oracle(const AlgebraContext& ctx, int maxdeg, int maxlen);
CheckRecord engine_confluence(const AlgebraContext& ctx, unsigned seed);
CheckRecord engine_translation(const AlgebraContext& ctx);
CheckRecord engine_trivial_control(const AlgebraContext& ctx);
CheckRecord engine_vacuum(const AlgebraContext& ctx);

CheckRecord center_centrality(const AlgebraContext& ctx, int m);
// Expected-failure variant: passes when a nonzero witness appears.
CheckRecord center_centrality_control(const AlgebraContext& ctx, int m);
CheckRecord center_alternative_form(const AlgebraContext& ctx, int m);
CheckRecord center_divisibility(const AlgebraContext& ctx, int m);
CheckRecord center_classical_limit(const AlgebraContext& ctx, int m);
CheckRecord center_commutativity(const AlgebraContext& ctx);

CheckRecord smap_fixed_point(const AlgebraContext& ctx);
CheckRecord smap_degenerate_control(const AlgebraContext& ctx);

CheckRecord dy_completed_centrality(const AlgebraContext& ctx, int m, int r);
CheckRecord dy_completed_centrality_control(const AlgebraContext& ctx, int m, int r);
CheckRecord dy_vacuum_reduction(const AlgebraContext& ctx, int m);

}  // namespace checks

std::vector<std::string> available_suites();

// Runs the selected checks for the configured algebra and truncations.
Report run_suite(const RunConfig& config);

// Process exit code for a finished report: 0 all pass, 1 some check failed.
int report_exit_code(const Report& report);

// Exact series emission: targets fseries, symmetrizer, Tplus, Phi,
// segal-sugawara. Deterministic JSON with rationals as "p/q" strings.
nlohmann::json emit_series(const RunConfig& config, const std::string& target);

}  // namespace bcdy
