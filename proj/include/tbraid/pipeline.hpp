#pragma once

// End-to-end run: classify -> normalize -> graph -> present -> verdict.

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "tbraid/braid.hpp"
#include "tbraid/certificate.hpp"
#include "tbraid/coset.hpp"
#include "tbraid/diagram.hpp"
#include "tbraid/lo.hpp"
#include "tbraid/presentation.hpp"

namespace tbraid {

struct PipelineOptions {
  std::size_t max_cosets = default_max_cosets;
  int depth = default_cone_depth;
  bool recheck = false;  // certificate re-verified from its JSON, lemma proofs replayed
};

enum ExitCode : int { kExitVerdict = 0, kExitInconclusive = 1, kExitInput = 2, kExitUnsound = 3 };

struct GraphSummary {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t faces = 0;
  bool euler = false;
  std::string root;
};

struct CosetSummary {
  bool complete = false;
  std::size_t order = 0;
  std::size_t defined = 0;
};

struct PipelineReport {
  std::string input;
  std::optional<Classification> classification;
  std::optional<NormalizationOutcome> normalization;
  std::optional<bool> normalization_replayed;
  std::optional<DecoratedCycleGraph> cycle;
  std::optional<CheckerboardGraph> graph;
  std::optional<GraphSummary> graph_summary;
  std::optional<GroupPresentation> presentation;
  std::optional<AbelianInvariants> abelian;
  std::optional<BigInt> determinant;
  std::optional<CosetSummary> cosets;
  std::optional<bool> cone_witness;
  std::optional<std::size_t> lemma_checks;
  std::optional<NonLOCertificate> certificate;
  std::optional<CertificateCheck> certificate_check;
  std::optional<Verdict> verdict;  // present iff a terminal rule fired
  bool machine_checked = false;
  std::string justification;
  std::vector<std::string> notes;
  bool hypothesis_not_met = false;
  std::string input_error;
  std::vector<std::string> soundness_failures;
  std::vector<std::pair<std::string, double>> timing_ms;

  int exit_code() const;
};

PipelineReport run_pipeline(const std::string& braid_text, const PipelineOptions& opt = {});

/// Cycle route on bare parameters: graph, presentation, certificate.
PipelineReport run_cycle(const DecoratedCycleGraph& d, const PipelineOptions& opt = {});

nlohmann::json to_json(const BaldwinClass& c);
nlohmann::json to_json(const Transcript& t);
/// canonical drops timing so identical inputs give identical bytes.
nlohmann::json to_json(const PipelineReport& r, bool canonical);

struct GridEntry {
  int line = 0;
  std::string text;
  bool is_params = false;
};

/// One braid or "(m;a;b)" per line; '#' starts a comment. Throws ParseError
/// naming the line.
std::vector<GridEntry> parse_grid(std::istream& in);

struct BatchSummary {
  std::vector<GridEntry> entries;
  std::vector<PipelineReport> reports;  // input order

  std::size_t count(std::optional<Verdict> v) const;
  std::size_t hypothesis_not_met() const;
  std::size_t unsound() const;
  int exit_code() const { return unsound() ? kExitUnsound : kExitVerdict; }
};

/// workers = 0 picks the hardware concurrency.
BatchSummary run_batch(const std::vector<GridEntry>& entries, const PipelineOptions& opt,
                       unsigned workers = 0);

nlohmann::json to_json(const BatchSummary& s, bool canonical);
std::string summary_table(const BatchSummary& s);

}  // namespace tbraid
