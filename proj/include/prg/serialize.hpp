#pragma once

#include <string>

#include <json.hpp>

#include "prg/analysis.hpp"
#include "prg/dynamics.hpp"
#include "prg/game.hpp"
#include "prg/softmax_study.hpp"
#include "prg/sweep.hpp"

namespace prg {

using json = nlohmann::json;

// Game description <-> JSON; numbers survive the round trip bit-for-bit.
json game_to_json(const PublishersGame& game);
PublishersGame game_from_json(const json& j);
PublishersGame load_game(const std::string& path);
void save_game(const PublishersGame& game, const std::string& path);

json report_to_json(const ConvergenceReport& report);
json verdict_to_json(const ConcavityVerdict& verdict);
json monotonicity_to_json(const WelfareMonotonicityReport& report);
json sweep_manifest(const SweepSpec& spec);

// round,player,x0..x{k-1},utility
void export_ledger_csv(const RegretLedger& ledger, const std::string& path);

// swept_parameter,value,activation,metric,mean,ci_low,ci_high,n_instances,n_failed
void export_sweep_csv(const SweepResult& result, const std::string& path);
void export_regret_audit_csv(const RegretAuditResult& result, const std::string& path);

// checkpoint,player,game,regret
void export_trace_csv(const RegretTraceResult& result, const std::string& path);

void write_json(const json& j, const std::string& path);
json read_json(const std::string& path);

} // namespace prg
