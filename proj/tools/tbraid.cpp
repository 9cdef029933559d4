#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "tbraid/braid.hpp"
#include "tbraid/certificate.hpp"
#include "tbraid/coset.hpp"
#include "tbraid/diagram.hpp"
#include "tbraid/pipeline.hpp"
#include "tbraid/presentation.hpp"

using namespace tbraid;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool is_params(const std::string& s) { return !s.empty() && s.front() == '('; }

DecoratedCycleGraph params_or_throw(const std::string& s) {
  try {
    return parse_cycle_params(s);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

BraidWord braid_or_throw(const std::string& s) {
  try {
    return parse_braid(s);
  } catch (const ParseError& e) {
    throw InputError(e.what());
  }
}

CheckerboardGraph graph_of(const std::string& s) {
  if (is_params(s)) return cycle_graph_from_params(params_or_throw(s));
  try {
    return closure_white_graph(braid_or_throw(s));
  } catch (const DegenerateDiagram& e) {
    throw InputError(e.what());
  }
}

GroupPresentation rooted_presentation(const CheckerboardGraph& g) {
  return kill_generator(greene_presentation(g), g.names[static_cast<std::size_t>(g.root)]);
}

void print(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"three-braid branched covers: classification, presentations, non-LO evidence"};
  app.require_subcommand(1);

  std::string input;
  bool json = false, dot = false, recheck = false, canonical = false, simplify = false;
  PipelineOptions opt;

  auto* classify = app.add_subcommand("classify", "Baldwin family of a braid, as JSON");
  classify->add_option("braid", input, "e.g. \"h s1 s2^-2\"")->required();
  classify->add_flag("--json", json, "accepted for symmetry; output is always JSON");

  auto* normalize = app.add_subcommand("normalize", "conjugate a type (1) braid with d = +-1 to cycle form");
  normalize->add_option("braid", input)->required();
  normalize->add_flag("--json", json, "include the move transcript");

  auto* graph = app.add_subcommand("graph", "white graph of a closure or of cycle parameters");
  graph->add_option("input", input, "braid or (m;a0,..;b1,..)")->required();
  graph->add_flag("--dot", dot, "Graphviz output");
  graph->add_flag("--json", json);

  auto* present = app.add_subcommand("present", "presentation, abelianization and determinant");
  present->add_option("input", input, "braid or (m;a0,..;b1,..)")->required();
  present->add_flag("--simplify", simplify, "apply Tietze moves");
  present->add_flag("--json", json);

  auto* cosets = app.add_subcommand("cosets", "coset table dump of the simplified presentation");
  cosets->add_option("input", input, "braid or (m;a0,..;b1,..)")->required();
  cosets->add_option("--max-cosets", opt.max_cosets)->check(CLI::PositiveNumber);

  auto* certify = app.add_subcommand("certify", "non-LO certificate for cycle parameters or a type (1) braid");
  certify->add_option("input", input, "(m;a0,..;b1,..) or braid")->required();
  certify->add_flag("--recheck", recheck, "re-verify from the serialized certificate");

  auto* recheck_cmd = app.add_subcommand("recheck", "re-verify a certificate JSON file");
  recheck_cmd->add_option("file", input)->required();

  auto add_pipeline_flags = [&](CLI::App* c) {
    c->add_flag("--json", json);
    c->add_flag("--recheck", opt.recheck, "re-verify certificates from JSON and replay lemma proofs");
    c->add_flag("--canonical", canonical, "no timing, for golden files");
    c->add_option("--max-cosets", opt.max_cosets)->check(CLI::PositiveNumber);
    c->add_option("--depth", opt.depth, "positive-cone search depth, 0 disables")->check(CLI::NonNegativeNumber);
  };
  auto* pipeline = app.add_subcommand("pipeline", "classify, normalize, present and decide");
  pipeline->add_option("braid", input)->required();
  add_pipeline_flags(pipeline);

  auto* batch = app.add_subcommand("batch", "run the pipeline over a grid file");
  batch->add_option("file", input, "one braid or (m;a;b) per line, # comments")->required();
  add_pipeline_flags(batch);
  unsigned workers = 0;
  batch->add_option("--workers", workers, "0 uses every core");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*classify) {
      print(to_json(classify_baldwin(braid_or_throw(input))));
      return kExitVerdict;
    }

    if (*normalize) {
      const auto w = braid_or_throw(input);
      const auto c = classify_baldwin(w);
      const auto* t = std::get_if<Type1>(&c);
      if (!t || (t->d != 1 && t->d != -1)) throw InputError("normalize needs a type (1) braid with d = +-1, got " + describe(c));
      const auto out = t->d == 1 ? normalize_type1_d1(w) : normalize_type1_dm1(w);
      const auto rep = replay_transcript(w, out.transcript, out.output);
      if (json) {
        PipelineReport r;
        r.input = input;
        print({{"input", input},
               {"output", to_string(out.output)},
               {"transcript", to_json(out.transcript)},
               {"replayed", rep.ok},
               {"cycle", std::holds_alternative<CycleForm>(out.shape)
                             ? nlohmann::json(std::get<CycleForm>(out.shape).graph.to_string())
                             : nlohmann::json(nullptr)}});
      } else {
        std::cout << to_string(out.output) << "\n";
        if (const auto* cf = std::get_if<CycleForm>(&out.shape)) std::cout << cf->graph.to_string() << "\n";
        for (const auto& m : out.transcript)
          std::cout << "  " << move_name(m.kind) << " -> " << to_string(m.result)
                    << (m.note.empty() ? "" : "  [" + m.note + "]") << "\n";
      }
      return rep.ok ? kExitVerdict : kExitUnsound;
    }

    if (*graph) {
      const auto g = graph_of(input);
      if (dot) {
        std::cout << to_dot(g);
      } else if (json) {
        auto edges = nlohmann::json::array();
        for (const auto& e : g.edges)
          edges.push_back({g.names[static_cast<std::size_t>(e.u)], g.names[static_cast<std::size_t>(e.v)], e.sign});
        print({{"vertices", g.names},
               {"root", g.names[static_cast<std::size_t>(g.root)]},
               {"edges", edges},
               {"faces", face_count(g)},
               {"euler", satisfies_euler(g)}});
      } else {
        std::cout << "vertices " << g.names.size() << ", edges " << g.edges.size() << ", faces " << face_count(g)
                  << ", euler " << (satisfies_euler(g) ? "ok" : "FAILS") << "\n";
        try {
          std::cout << "cycle form " << to_decorated(g).to_string() << "\n";
        } catch (const ShapeMismatch&) {
        }
      }
      return kExitVerdict;
    }

    if (*present) {
      const auto g = graph_of(input);
      GroupPresentation p = is_params(input) ? cycle_presentation(params_or_throw(input)) : rooted_presentation(g);
      if (simplify) p = tietze_simplify(p);
      const auto inv = abelianize(p);
      const auto det = goeritz_matrix(g).determinant();
      if (json) {
        print({{"presentation", to_json(p)}, {"abelianization", inv.to_string()}, {"determinant", det.str()}});
      } else {
        std::cout << pretty(p) << "\nH1 = " << inv.to_string() << "\ndet = " << det.str() << "\n";
      }
      return kExitVerdict;
    }

    if (*cosets) {
      const auto g = graph_of(input);
      const auto p = tietze_simplify(is_params(input) ? cycle_presentation(params_or_throw(input)) : rooted_presentation(g));
      const auto t = todd_coxeter(p, opt.max_cosets);
      std::cout << dump(t);
      return t.complete ? kExitVerdict : kExitInconclusive;
    }

    if (*certify) {
      DecoratedCycleGraph d;
      if (is_params(input)) {
        d = params_or_throw(input);
      } else {
        const auto w = braid_or_throw(input);
        const auto c = classify_baldwin(w);
        const auto* t = std::get_if<Type1>(&c);
        if (!t || (t->d != 1 && t->d != -1)) throw InputError("certify needs a type (1) braid with d = +-1");
        const auto out = t->d == 1 ? normalize_type1_d1(w) : normalize_type1_dm1(w);
        const auto* cf = std::get_if<CycleForm>(&out.shape);
        if (!cf) throw InputError("normal form is not a cycle graph: " + to_string(out.output));
        d = cf->graph;
      }
      NonLOCertificate cert;
      try {
        cert = certify_cycle_non_lo(d);
      } catch (const HypothesisNotMet& e) {
        std::cerr << "HypothesisNotMet: " << e.what() << "\n";
        return kExitInconclusive;
      } catch (const DegenerateShape& e) {
        std::cerr << "n = 0: " << e.what() << "\n";
        return kExitInconclusive;
      }
      const auto j = to_json(cert);
      print(j);
      if (recheck) {
        const auto check = verify_certificate(certificate_from_json(nlohmann::json::parse(j.dump())));
        std::cerr << (check.ok ? "recheck ok, " + std::to_string(check.steps_checked) + " steps"
                               : "recheck FAILED: " + check.failure)
                  << "\n";
        if (!check.ok) return kExitUnsound;
      }
      return kExitVerdict;
    }

    if (*recheck_cmd) {
      std::ifstream in(input);
      if (!in) throw InputError("cannot open " + input);
      NonLOCertificate cert;
      try {
        cert = certificate_from_json(nlohmann::json::parse(in));
      } catch (const std::exception& e) {
        throw InputError(std::string("not a certificate: ") + e.what());
      }
      const auto check = verify_certificate(cert);
      std::cout << (check.ok ? "ok, " + std::to_string(check.steps_checked) + " steps checked"
                             : "FAILED: " + check.failure)
                << "\n";
      return check.ok ? kExitVerdict : kExitUnsound;
    }

    if (*pipeline) {
      const auto r = run_pipeline(input, opt);
      if (json) {
        print(to_json(r, canonical));
      } else {
        if (!r.input_error.empty()) std::cerr << "parse error: " << r.input_error << "\n";
        if (r.classification) std::cout << "class: " << describe(r.classification->family) << "\n";
        if (r.normalization) std::cout << "normal form: " << to_string(r.normalization->output) << "\n";
        if (r.cycle) std::cout << "cycle graph: " << r.cycle->to_string() << "\n";
        if (r.abelian) std::cout << "H1: " << r.abelian->to_string() << "\n";
        if (r.determinant) std::cout << "det: " << r.determinant->str() << "\n";
        if (r.cosets)
          std::cout << "cosets: " << (r.cosets->complete ? "order " + std::to_string(r.cosets->order) : "exhausted")
                    << "\n";
        for (const auto& n : r.notes) std::cout << "note: " << n << "\n";
        std::cout << "verdict: " << (r.verdict ? std::string(verdict_name(*r.verdict)) : "none")
                  << (r.verdict && !r.machine_checked ? " (not machine-checked)" : "") << "\n";
        if (!r.justification.empty()) std::cout << "  " << r.justification << "\n";
        for (const auto& f : r.soundness_failures) std::cout << "SOUNDNESS FAILURE: " << f << "\n";
      }
      return r.exit_code();
    }

    if (*batch) {
      std::ifstream in(input);
      if (!in) throw InputError("cannot open " + input);
      std::vector<GridEntry> entries;
      try {
        entries = parse_grid(in);
      } catch (const ParseError& e) {
        throw InputError(e.what());
      }
      const auto s = run_batch(entries, opt, workers);
      if (json)
        print(to_json(s, canonical));
      else
        std::cout << summary_table(s);
      return s.exit_code();
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitUnsound;
  }
  return kExitInput;
}
