#pragma once

// Batch driver: parses descriptors, computes decompositions and invariants,
// runs the oracles and renders human or structured (JSON) reports.

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <future>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "susp5/decompose.hpp"
#include "susp5/descriptor_io.hpp"
#include "susp5/errors.hpp"
#include "susp5/invariants.hpp"
#include "susp5/spaces.hpp"

namespace susp5 {

inline constexpr const char* kToolVersion = "1.0.0";

enum class OutputFormat { Human, Structured };

struct RunConfig {
  std::vector<std::string> inputs;  // empty: read one descriptor from stdin
  SuspensionMode mode = SuspensionMode::Single;
  OutputFormat format = OutputFormat::Human;
  bool check_homology = true;
  bool check_pi = true;
  int verbosity = 0;
  std::optional<std::string> out;
  bool inject_fault = false;  // test hook: corrupts the wedge seen by the homology oracle
};

struct Input {
  std::string source;
  std::optional<std::string> text;  // empty on I/O failure
  std::string io_error;
};

using Json = nlohmann::ordered_json;

namespace detail {

inline Json verdict(bool ok) { return ok ? "pass" : "fail"; }

inline Json homology_oracle(const ManifoldDescriptor& m, const Wedge& w, SuspensionMode mode) {
  const int shift = mode == SuspensionMode::Single ? 1 : 2;
  Json mismatches = Json::array();
  for (int i = 0; i <= 5 + shift + 1; ++i) {
    FgAbGroup lhs = wedge_homology(w, i);
    FgAbGroup rhs = i - shift >= 0 ? manifold_homology(m, i - shift) : FgAbGroup{};
    if (lhs != rhs)
      mismatches.push_back("H_" + std::to_string(i) + ": wedge " + lhs.to_string() + ", expected " + rhs.to_string());
  }
  Json out;
  out["verdict"] = verdict(mismatches.empty());
  if (!mismatches.empty()) out["mismatches"] = std::move(mismatches);
  return out;
}

template <class F>
Json group_oracle(F&& summandwise, const FgAbGroup& closed, Json& provenance) {
  Json out;
  try {
    SummandwiseResult r = summandwise();
    for (const auto& t : r.terms)
      if (t.entry.source == "derived" || t.entry.source == "implied")
        provenance.push_back(t.summand.to_string() + ": " + t.entry.group.to_string() + " (" + t.entry.source + ")");
    out["verdict"] = verdict(r.total == closed);
    out["summandwise"] = r.total.to_string();
    out["closed_form"] = closed.to_string();
  } catch (const UnsupportedError& e) {
    out["verdict"] = "fail";
    out["error"] = e.what();
  }
  return out;
}

inline void dedupe(Json& arr) {
  std::vector<std::string> v;
  for (const auto& x : arr) v.push_back(x.get<std::string>());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  arr = Json::array();
  for (auto& s : v) arr.push_back(std::move(s));
}

}  // namespace detail

/// One report. "status" is "ok" or "error"; "passed" is false on any error or failed oracle.
inline Json build_report(const Input& in, const RunConfig& cfg) {
  Json r;
  r["source"] = in.source;
  r["mode"] = to_string(cfg.mode);
  auto fail = [&](const std::string& kind, const std::string& msg, int line = 0, int col = 0) {
    r["status"] = "error";
    Json e;
    e["kind"] = kind;
    e["message"] = msg;
    if (line) e["line"] = line;
    if (col) e["column"] = col;
    r["error"] = std::move(e);
    r["passed"] = false;
    return r;
  };
  if (!in.text) return fail("io", in.io_error);

  ManifoldDescriptor m;
  try {
    m = parse_descriptor(*in.text, cfg.mode);
  } catch (const ParseError& e) {
    return fail(ParseError::kind_name(e.kind()), e.what(), e.line(), e.column());
  }

  try {
    Resolved res = resolve(m, cfg.mode);
    Json input;
    input["l"] = m.l;
    input["d"] = m.d;
    input["H"] = m.H.to_string();
    input["T"] = m.T.to_string();
    input["spin"] = m.spin;
    input["smooth"] = m.smooth;
    input["pd_mode"] = m.pd_mode;
    input["data"] = std::holds_alternative<InvariantData>(m.data) ? "invariants" : "attaching";
    r["status"] = "ok";
    r["input"] = std::move(input);

    Json inv;
    inv["c1"] = res.c1;
    inv["c2"] = res.c2;
    Json consumed = Json::array();
    for (int j : res.consumed) consumed.push_back(j + 1);
    inv["consumed"] = std::move(consumed);
    r["invariants"] = std::move(inv);

    Json c;
    c["name"] = res.attach.name();
    if (res.attach.kind != AttachCase::Kind::Null && res.attach.kind != AttachCase::Kind::EtaTop &&
        res.attach.kind != AttachCase::Kind::EtaSqTop) {
      c["index"] = res.attach.index + 1;
      c["r"] = res.attach.r;
    }
    c["description"] = case_description(res.attach, m.spin);
    r["case"] = std::move(c);

    const Wedge w = decomposition(m, cfg.mode);
    if (cfg.mode == SuspensionMode::Single) r["suspension"] = w.to_string();
    r["double_suspension"] = cfg.mode == SuspensionMode::Double ? w.to_string()
                                                                   : double_suspension_decomposition(m).to_string();
    HomologySections hs = homology_sections(m, cfg.mode);
    Json sec;
    sec["W3"] = hs.w3.to_string();
    sec["W4"] = hs.w4.to_string();
    sec["W5"] = hs.w5.to_string();
    r["homology_sections"] = std::move(sec);

    Json provenance = Json::array();
    Json oracles;
    bool passed = true;

    Json groups;
    Json k_check = detail::group_oracle([&] { return k_group_summandwise(m); }, k_group_closed_form(m), provenance);
    Json ko_check = detail::group_oracle([&] { return ko_group_summandwise(m); }, ko_group_closed_form(m), provenance);
    groups["K"] = k_check.contains("summandwise") ? k_check["summandwise"] : Json(nullptr);
    groups["KO"] = ko_check.contains("summandwise") ? ko_check["summandwise"] : Json(nullptr);
    try {
      groups["pi3"] = pi3(m).to_string();
    } catch (const UnsupportedError& e) {
      groups["pi3"] = nullptr;
      groups["pi3_unsupported"] = e.what();
    }
    groups["pi1"] = hurewicz_cohomotopy(m, 1).to_string();
    groups["pi5"] = hurewicz_cohomotopy(m, 5).to_string();
    r["groups"] = std::move(groups);

    if (cfg.check_homology) {
      Wedge checked = w;
      if (cfg.inject_fault) checked.add(ElementaryComplex::sphere(3));
      Json h = detail::homology_oracle(m, checked, cfg.mode);
      passed = passed && h["verdict"] == "pass";
      oracles["homology"] = std::move(h);
      const int cells = cell_count(checked);
      Json cc;
      cc["verdict"] = detail::verdict(cells == expected_cell_count(m));
      cc["cells"] = cells;
      cc["expected"] = expected_cell_count(m);
      passed = passed && cc["verdict"] == "pass";
      oracles["cells"] = std::move(cc);
    }
    if (cfg.check_pi) {
      passed = passed && k_check["verdict"] == "pass" && ko_check["verdict"] == "pass";
      oracles["K"] = std::move(k_check);
      oracles["KO"] = std::move(ko_check);
      Json p;
      if (r["groups"]["pi3"].is_null()) {
        p["verdict"] = "unsupported";
      } else {
        try {
          SummandwiseResult s = pi4_sigma_summandwise(m);
          for (const auto& t : s.terms)
            if (t.entry.source == "derived" || t.entry.source == "implied")
              provenance.push_back("[" + t.summand.to_string() + ", S^4] = " + t.entry.group.to_string() + " (" +
                                   t.entry.source + ")");
          p["verdict"] = detail::verdict(s.total.to_string() == r["groups"]["pi3"].get<std::string>());
          p["summandwise"] = s.total.to_string();
        } catch (const UnsupportedError& e) {
          p["verdict"] = "fail";
          p["error"] = e.what();
        }
        passed = passed && p["verdict"] == "pass";
      }
      oracles["pi3"] = std::move(p);
    }
    r["oracles"] = std::move(oracles);
    detail::dedupe(provenance);
    if (!provenance.empty()) r["provenance"] = std::move(provenance);
    if (cfg.verbosity > 0) r["trace"] = res.trace;
    r["passed"] = passed;
  } catch (const std::exception& e) {
    return fail("internal", e.what());
  }
  return r;
}

inline std::string render_human(const Json& r) {
  std::ostringstream os;
  os << "== " << r["source"].get<std::string>() << " (" << r["mode"].get<std::string>() << ") ==\n";
  if (r["status"] == "error") {
    const Json& e = r["error"];
    os << "error (" << e["kind"].get<std::string>() << ")";
    if (e.contains("line")) os << " at line " << e["line"].get<int>();
    if (e.contains("column")) os << ", column " << e["column"].get<int>();
    os << ": " << e["message"].get<std::string>() << "\n";
    return os.str();
  }
  const Json& in = r["input"];
  os << "M: l=" << in["l"].get<int>() << " d=" << in["d"].get<int>() << " H=" << in["H"].get<std::string>()
     << " T=" << in["T"].get<std::string>() << (in["spin"].get<bool>() ? " spin" : " non-spin")
     << (in["pd_mode"].get<bool>() ? " (Poincare complex)" : "") << "\n";
  const Json& c = r["case"];
  os << "case: " << c["name"].get<std::string>();
  if (c.contains("index")) os << "(" << c["index"].get<int>() << ")";
  os << " -- " << c["description"].get<std::string>() << "\n";
  const Json& inv = r["invariants"];
  os << "c1 = " << inv["c1"].get<int>() << ", c2 = " << inv["c2"].get<int>() << ", consumed = " << inv["consumed"].dump()
     << "\n";
  if (r.contains("suspension")) os << "Sigma M   ~ " << r["suspension"].get<std::string>() << "\n";
  os << "Sigma^2 M ~ " << r["double_suspension"].get<std::string>() << "\n";
  for (const char* k : {"W3", "W4", "W5"})
    os << k << " = " << r["homology_sections"][k].get<std::string>() << "\n";
  const Json& g = r["groups"];
  auto show = [](const Json& v) { return v.is_null() ? std::string("n/a") : v.get<std::string>(); };
  os << "K~(M)  = " << show(g["K"]) << "\n";
  os << "KO~(M) = " << show(g["KO"]) << "\n";
  os << "pi^3(M) = " << (g["pi3"].is_null() ? "unsupported: " + g["pi3_unsupported"].get<std::string>() : show(g["pi3"]))
     << "\n";
  os << "pi^1(M) = " << show(g["pi1"]) << ", pi^5(M) = " << show(g["pi5"]) << "\n";
  if (r.contains("oracles") && !r["oracles"].empty()) {
    os << "oracles:";
    for (const auto& [name, v] : r["oracles"].items()) os << " " << name << "=" << v["verdict"].get<std::string>();
    os << "\n";
    if (r["oracles"].contains("homology") && r["oracles"]["homology"].contains("mismatches"))
      for (const auto& mm : r["oracles"]["homology"]["mismatches"]) os << "  " << mm.get<std::string>() << "\n";
  }
  if (r.contains("provenance"))
    for (const auto& p : r["provenance"]) os << "note: " << p.get<std::string>() << "\n";
  if (r.contains("trace"))
    for (const auto& t : r["trace"]) os << "trace: " << t.get<std::string>() << "\n";
  return os.str();
}

inline Input read_input(const std::string& path) {
  Input in{path, std::nullopt, {}};
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    in.io_error = "cannot open '" + path + "': " + std::strerror(errno);
    return in;
  }
  in.text = std::string(std::istreambuf_iterator<char>(f), {});
  if (f.bad()) {
    in.text.reset();
    in.io_error = "error reading '" + path + "': " + std::strerror(errno);
  }
  return in;
}

struct RunResult {
  int exit_code = 0;
  std::string output;
  Json reports = Json::array();
};

/// Builds the reports for already-read inputs, in input order.
inline RunResult run_inputs(const std::vector<Input>& inputs, const RunConfig& cfg) {
  std::vector<std::future<Json>> jobs;
  for (const auto& in : inputs)
    jobs.push_back(std::async(inputs.size() > 1 ? std::launch::async : std::launch::deferred,
                              [&in, &cfg] { return build_report(in, cfg); }));
  RunResult out;
  for (auto& j : jobs) out.reports.push_back(j.get());
  for (const auto& r : out.reports)
    if (!r["passed"].get<bool>()) out.exit_code = 1;
  if (cfg.format == OutputFormat::Structured) {
    Json doc;
    doc["tool"] = "susp5";
    doc["version"] = kToolVersion;
    doc["mode"] = to_string(cfg.mode);
    doc["reports"] = out.reports;
    doc["exit_code"] = out.exit_code;
    out.output = doc.dump(2) + "\n";
  } else {
    for (std::size_t i = 0; i < out.reports.size(); ++i) out.output += (i ? "\n" : "") + render_human(out.reports[i]);
  }
  return out;
}

/// Reads the configured inputs (stdin when none) and builds the reports.
inline RunResult run(const RunConfig& cfg, std::istream& stdin_stream = std::cin) {
  std::vector<Input> inputs;
  if (cfg.inputs.empty()) {
    inputs.push_back({"<stdin>", std::string(std::istreambuf_iterator<char>(stdin_stream), {}), {}});
  } else {
    for (const auto& p : cfg.inputs) inputs.push_back(read_input(p));
  }
  return run_inputs(inputs, cfg);
}

}  // namespace susp5
