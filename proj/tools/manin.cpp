#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "manin/manin.h"

namespace {

using Json = nlohmann::ordered_json;

struct Input {
  std::string text;
  bool ok = true;
  std::string error;
};

// Inline JSON when the argument looks like a document, a file path otherwise.
Input read_argument(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return {arg, true, {}};
  std::ifstream in(arg, std::ios::binary);
  if (!in) return {"", false, "cannot read " + arg};
  std::ostringstream ss;
  ss << in.rdbuf();
  return {ss.str(), true, {}};
}

class Handle {
 public:
  ~Handle() { manin_pair_free(pair_); }
  manin_pair** out() { return &pair_; }
  const manin_pair* get() const { return pair_; }

 private:
  manin_pair* pair_ = nullptr;
};

struct Outcome {
  int status = MANIN_OK;
  Json report;
};

Outcome from_c(manin_status status, char* text) {
  Outcome out;
  out.status = status;
  out.report = text ? Json::parse(text) : Json::object();
  manin_string_free(text);
  return out;
}

// Sequences the call before the output is read.
template <class F>
Outcome call(F&& f) {
  char* text = nullptr;
  const manin_status status = f(&text);
  return from_c(status, text);
}

Outcome input_error(const std::string& message) {
  return {MANIN_INPUT_ERROR, Json{{"error", Json{{"kind", "input"}, {"message", message}}}}};
}

template <class F>
Outcome with_pair(const std::string& spec_arg, F&& body) {
  const Input spec = read_argument(spec_arg);
  if (!spec.ok) return input_error(spec.error);
  Handle h;
  const Outcome loaded = call([&](char** t) { return manin_pair_load(spec.text.c_str(), h.out(), t); });
  if (loaded.status != MANIN_OK) return loaded;
  return body(h.get());
}

void render_text(const Json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    if (j.contains("id") && j.contains("pass")) {
      os << prefix << j["id"].get<std::string>() << ": " << (j["pass"].get<bool>() ? "pass" : "FAIL")
         << "\n";
      if (j.contains("witness")) render_text(j["witness"], prefix + "  ", os);
      return;
    }
    for (const auto& [k, v] : j.items()) {
      if (v.is_structured()) {
        os << prefix << k << ":\n";
        render_text(v, prefix + "  ", os);
      } else {
        os << prefix << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_structured()) {
        render_text(v, prefix, os);
      } else {
        os << prefix << "- " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else {
    os << prefix << j.dump() << "\n";
  }
}

int emit(const Outcome& outcome, int argc, char** argv, const std::string& output,
         const std::optional<double>& timing_ms) {
  const int status = outcome.status == MANIN_INTERNAL_ERROR ? MANIN_INPUT_ERROR : outcome.status;
  Json run{{"command", std::vector<std::string>(argv + 1, argv + argc)},
           {"status", status},
           {"report", outcome.report}};
  if (timing_ms) run["timing_ms"] = *timing_ms;
  if (output == "text") {
    render_text(run, "", std::cout);
  } else {
    std::cout << run.dump(2) << "\n";
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lie bialgebroid pairs: Dirac operators and identity suites"};
  app.require_subcommand(1);
  std::string output = "json";
  bool timing = false;
  unsigned probe_degree = 2;
  app.add_option("--output", output, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--timing", timing, "add wall-clock time to the report");

  std::string spec_arg;
  auto* validate = app.add_subcommand("validate", "validate both algebroid structures");
  validate->add_option("spec", spec_arg, "pair document (file or inline JSON)")->required();

  auto* check = app.add_subcommand("check", "decide whether the Dirac square is a function");
  check->add_option("spec", spec_arg)->required();
  check->add_option("--probe-degree", probe_degree, "coordinate degree of the probe family");

  std::string suite;
  auto* identities = app.add_subcommand("identities", "run an identity suite");
  identities->add_option("spec", spec_arg)->required();
  identities->add_option("--suite", suite)
      ->required()
      ->check(CLI::IsMember({"theorem-c", "corollaries", "courant", "generator"}));
  identities->add_option("--probe-degree", probe_degree);

  auto* modular = app.add_subcommand("modular", "modular cocycles and f_tilde");
  modular->add_option("spec", spec_arg)->required();

  auto* example = app.add_subcommand("example", "build and check a standard pair");
  example->require_subcommand(1);
  example->add_option("--probe-degree", probe_degree);
  std::string qa = "0", qb = "0", qc = "0", qd = "0";
  auto* apb = example->add_subcommand("a-plus-b", "[e1,e2] = a e1 + b e2, [eps1,eps2] = c eps1 + d eps2");
  apb->add_option("--a", qa);
  apb->add_option("--b", qb);
  apb->add_option("--c", qc);
  apb->add_option("--d", qd);
  unsigned dim = 2;
  std::string pi_arg, lambda_arg, n_arg;
  auto* poisson = example->add_subcommand("poisson", "tangent and cotangent double of pi");
  poisson->add_option("--dim", dim)->required();
  poisson->add_option("--pi", pi_arg, "{\"i,j\": poly}")->required();
  auto* exact = example->add_subcommand("exact", "exact pair from a bivector on A");
  exact->add_option("spec", spec_arg)->required();
  exact->add_option("--lambda", lambda_arg, "{\"i,j\": poly}")->required();
  unsigned k = 0, l = 1;
  auto* pn = example->add_subcommand("pn", "Poisson-Nijenhuis hierarchy pair (A_l, A*_k)");
  pn->add_option("spec", spec_arg)->required();
  pn->add_option("--n", n_arg, "[[poly, ...], ...]")->required();
  pn->add_option("--lambda", lambda_arg)->required();
  pn->add_option("--k", k);
  pn->add_option("--l", l);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    Outcome usage{MANIN_INPUT_ERROR, Json{{"error", Json{{"kind", "usage"}, {"message", e.what()}}}}};
    return emit(usage, argc, argv, output == "text" ? output : "json", std::nullopt);
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  if (validate->parsed()) {
    const Input spec = read_argument(spec_arg);
    outcome = spec.ok ? call([&](char** t) { return manin_validate(spec.text.c_str(), t); })
                      : input_error(spec.error);
  } else if (check->parsed()) {
    outcome = with_pair(spec_arg, [&](const manin_pair* p) {
      return call([&](char** t) { return manin_check(p, probe_degree, t); });
    });
  } else if (identities->parsed()) {
    outcome = with_pair(spec_arg, [&](const manin_pair* p) {
      return call([&](char** t) { return manin_identities(p, suite.c_str(), probe_degree, t); });
    });
  } else if (modular->parsed()) {
    outcome = with_pair(spec_arg, [&](const manin_pair* p) {
      return call([&](char** t) { return manin_modular(p, t); });
    });
  } else if (apb->parsed()) {
    outcome = call([&](char** t) {
      return manin_example_a_plus_b(qa.c_str(), qb.c_str(), qc.c_str(), qd.c_str(), probe_degree,
                                    t);
    });
  } else if (poisson->parsed()) {
    const Input pi = read_argument(pi_arg);
    outcome = pi.ok ? call([&](char** t) {
      return manin_example_poisson(dim, pi.text.c_str(), probe_degree, t);
    })
                    : input_error(pi.error);
  } else if (exact->parsed() || pn->parsed()) {
    const Input spec = read_argument(spec_arg);
    const Input lambda = read_argument(lambda_arg);
    const Input n = pn->parsed() ? read_argument(n_arg) : Input{};
    if (!spec.ok || !lambda.ok || !n.ok) {
      outcome = input_error(!spec.ok ? spec.error : !lambda.ok ? lambda.error : n.error);
    } else if (exact->parsed()) {
      outcome = call([&](char** t) {
        return manin_example_exact(spec.text.c_str(), lambda.text.c_str(), probe_degree, t);
      });
    } else {
      outcome = call([&](char** t) {
        return manin_example_pn(spec.text.c_str(), n.text.c_str(), lambda.text.c_str(), k, l,
                                probe_degree, t);
      });
    }
  }

  std::optional<double> timing_ms;
  if (timing) {
    timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return emit(outcome, argc, argv, output, timing_ms);
}
