// Copyright (c) freiman-cover contributors.
// SPDX-License-Identifier: Apache-2.0
#include "freiman/cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <limits>
#include <optional>
#include <sstream>

#include "freiman/chang.hpp"
#include "freiman/covering.hpp"
#include "freiman/errors.hpp"
#include "freiman/fourier.hpp"
#include "freiman/pipeline.hpp"
#include "freiman/rng.hpp"
#include "freiman/verify_suite.hpp"

namespace freiman::cli {

using json = nlohmann::ordered_json;

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(line == 0 ? message
                                   : message + " (line " + std::to_string(line) + ", column " +
                                         std::to_string(column) + ")"),
      line_(line),
      column_(column) {}

namespace {

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

// Offset of the key `"name"` at object depth 1, or npos.
std::size_t key_offset(std::string_view text, std::string_view name) {
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (c == '\\') ++i;
      else if (c == '"') in_string = false;
      continue;
    }
    if (c == '"') {
      if (depth == 1 && text.substr(i + 1, name.size()) == name && i + 1 + name.size() < text.size() &&
          text[i + 1 + name.size()] == '"') {
        return i;
      }
      in_string = true;
    } else if (c == '{' || c == '[') {
      ++depth;
    } else if (c == '}' || c == ']') {
      --depth;
    }
  }
  return std::string_view::npos;
}

// Offset of the index-th array inside the "elements" array.
std::size_t element_offset(std::string_view text, std::size_t index) {
  std::size_t pos = key_offset(text, "elements");
  if (pos == std::string_view::npos) return 0;
  pos = text.find('[', pos);
  if (pos == std::string_view::npos) return 0;
  int depth = 0;
  std::size_t seen = 0;
  for (std::size_t i = pos; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '[') {
      ++depth;
      if (depth == 2) {
        if (seen == index) return i;
        ++seen;
      }
    } else if (c == ']') {
      if (--depth == 0) break;
    }
  }
  return pos;
}

[[noreturn]] void fail_at(std::string_view text, std::size_t offset, const std::string& message) {
  const auto [line, column] = line_column(text, offset);
  throw ParseError(message, line, column);
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr);
  std::ostringstream out;
  for (unsigned int i = 0; i < length; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int{digest[i]};
  return out.str();
}

json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return json(z.get_si());
  return json(z.get_str());
}

json rational_json(const Rational& q) { return json{{"num", integer_json(q.get_num())}, {"den", integer_json(q.get_den())}}; }

json element_json(const GroupSpec& spec, ElementIndex x) { return json(spec.element(x).coords); }

json set_json(const GroupSet& s) {
  json out = json::array();
  s.for_each([&](ElementIndex x) { out.push_back(element_json(s.spec(), x)); });
  return out;
}

json tuple_json(const GroupSpec& spec, std::span<const ElementIndex> tuple) {
  json out = json::array();
  for (auto x : tuple) out.push_back(element_json(spec, x));
  return out;
}

json check_json(const CheckRecord& c) {
  return json{{"name", c.name},         {"anchor", c.anchor}, {"relation", c.relation},
              {"lhs", rational_json(c.lhs)}, {"rhs", rational_json(c.rhs)}, {"holds", c.holds},
              {"unconditional", c.unconditional}};
}

json checks_json(const std::vector<CheckRecord>& checks) {
  json out = json::array();
  for (const auto& c : checks) out.push_back(check_json(c));
  return out;
}

bool all_hold(const std::vector<CheckRecord>& checks) {
  for (const auto& c : checks) {
    if (c.unconditional && !c.holds) return false;
  }
  return true;
}

Rational size_q(std::size_t n) { return Rational(static_cast<unsigned long>(n)); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct Flags {
  std::string group;
  std::string input;
  std::string delta = "1/2";
  std::string epsilon = "1/2";
  std::string kappa = "1/2";
  std::string eta = "1/4";
  std::optional<unsigned> k;
  std::uint64_t seed = 1;
  std::string output;
  std::string format = "json";
  std::size_t cap = kPetridisCap;
  std::string family;
  std::optional<std::size_t> size;
  std::size_t count = 20;
  std::string kappa_rule = "corrected";
};

struct Context {
  std::string command;
  std::vector<std::string> args;
  Flags flags;
  std::string input_text;
};

json report_header(const Context& ctx, const GroupSpec* spec) {
  json report;
  report["command"] = ctx.command;
  report["args"] = ctx.args;
  report["seed"] = ctx.flags.seed;
  std::string digest_source = ctx.input_text;
  if (digest_source.empty()) {
    for (const auto& a : ctx.args) digest_source += a + '\n';
  }
  report["input_digest"] = "sha256:" + sha256_hex(digest_source);
  if (spec != nullptr) report["group"] = json(std::vector<std::uint32_t>(spec->moduli().begin(), spec->moduli().end()));
  return report;
}

SetFile load_input(Context& ctx) {
  if (ctx.flags.input.empty()) throw ParseError("--input is required for " + ctx.command);
  ctx.input_text = read_file(ctx.flags.input);
  return parse_set_text(ctx.input_text);
}

const char* kCsvHeader = "family,seed,K_num,K_den,delta,X_size,bound_num,bound_den,holds";

std::string csv_row(const std::string& family, std::uint64_t seed, const CoverCertificate& cert) {
  std::ostringstream row;
  row << family << ',' << seed << ',' << cert.doubling.get_num() << ',' << cert.doubling.get_den() << ','
      << cert.delta.get_str() << ',' << cert.x.size() << ',' << cert.size_bound.get_num() << ','
      << cert.size_bound.get_den() << ',' << (cert.valid ? "true" : "false");
  return row.str();
}

json cover_json(const GroupSet& a, const CoverCertificate& cert) {
  const GroupSpec& spec = a.spec();
  json coverage = json::array();
  for (const auto& [x, count] : cert.per_x_coverage) {
    coverage.push_back(json{{"x", element_json(spec, x)}, {"count", count}});
  }
  return json{{"set_size", a.size()},
              {"delta", rational_json(cert.delta)},
              {"K", rational_json(cert.doubling)},
              {"size_bound", rational_json(cert.size_bound)},
              {"X", set_json(cert.x)},
              {"trace", tuple_json(spec, cert.trace)},
              {"coverage", coverage},
              {"valid", cert.valid}};
}

std::vector<CheckRecord> cover_checks(const GroupSet& a, const CoverCertificate& cert) {
  std::vector<CheckRecord> checks;
  checks.push_back(make_check("cover_size_bound", "statistical covering", size_q(cert.x.size()), "<=", cert.size_bound));
  const CoverVerdict verdict = verify_covered(a, cert.x, cert.delta);
  checks.push_back(
      make_check("covered", "statistical covering", Rational(1) - cert.delta, "<=", verdict.min_fraction));
  checks.push_back(make_check("cover_growth", "statistical covering",
                              check_cover_growth(a, cert) ? Rational(0) : Rational(1), "<=", Rational(0)));
  return checks;
}

int emit(const Context& ctx, const std::string& text, std::ostream& out) {
  if (ctx.flags.output.empty()) {
    out << text;
    return kExitOk;
  }
  std::ofstream file(ctx.flags.output, std::ios::binary);
  if (!file) throw ParseError("cannot write " + ctx.flags.output);
  file << text;
  return kExitOk;
}

int finish(const Context& ctx, json report, bool ok, std::chrono::steady_clock::time_point start,
           std::ostream& out) {
  const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
  report["ok"] = ok;
  report["timings"] = json{{"total_ms", elapsed.count()}};
  emit(ctx, report.dump(2) + "\n", out);
  return ok ? kExitOk : kExitVerification;
}

int cmd_cover(Context& ctx, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const Rational delta = parse_rational(ctx.flags.delta);
  const bool csv = ctx.flags.format == "csv";

  if (!ctx.flags.input.empty()) {
    const SetFile in = load_input(ctx);
    const CoverCertificate cert = statistical_cover(in.set, in.set, delta);
    auto checks = cover_checks(in.set, cert);
    const GroupSet ruzsa = ruzsa_cover(in.set, in.set);
    checks.push_back(make_check("ruzsa_size_bound", "Ruzsa covering", size_q(ruzsa.size() * in.set.size()), "<=",
                                size_q(sumset(in.set, in.set).size())));
    const bool ok = all_hold(checks);
    if (csv) {
      emit(ctx, std::string(kCsvHeader) + "\n" + csv_row("input", ctx.flags.seed, cert) + "\n", out);
      return ok ? kExitOk : kExitVerification;
    }
    json report = report_header(ctx, &in.spec);
    json result = cover_json(in.set, cert);
    result["ruzsa_X"] = set_json(ruzsa);
    report["result"] = result;
    report["checks"] = checks_json(checks);
    return finish(ctx, report, ok, start, out);
  }

  if (ctx.flags.group.empty()) throw ParseError("cover needs --input or --group");
  const GroupSpec spec = parse_group(ctx.flags.group);
  std::vector<InstanceKind> kinds;
  if (ctx.flags.family.empty()) {
    kinds = {InstanceKind::random, InstanceKind::subgroup, InstanceKind::coset_union, InstanceKind::independent};
  } else {
    kinds = {parse_instance_kind(ctx.flags.family)};
  }
  const std::size_t default_size = static_cast<std::size_t>(std::min<std::uint64_t>(10, spec.order()));
  std::string rows = std::string(kCsvHeader) + "\n";
  json entries = json::array();
  bool ok = true;
  Rng rng(ctx.flags.seed);
  for (auto kind : kinds) {
    for (std::size_t i = 0; i < ctx.flags.count; ++i) {
      const std::uint64_t seed = rng.next();
      InstanceParams params;
      params.size = kind == InstanceKind::coset_union ? 2 : ctx.flags.size.value_or(default_size);
      GroupSet a(spec);
      try {
        a = generate_instance(kind, spec, params, seed);
      } catch (const DomainError&) {
        continue;
      }
      const CoverCertificate cert = statistical_cover(a, a, delta);
      const bool holds = all_hold(cover_checks(a, cert));
      ok = ok && holds;
      rows += csv_row(to_string(kind), seed, cert) + "\n";
      entries.push_back(json{{"family", to_string(kind)},
                             {"seed", seed},
                             {"K", rational_json(cert.doubling)},
                             {"X_size", cert.x.size()},
                             {"size_bound", rational_json(cert.size_bound)},
                             {"holds", holds}});
    }
  }
  if (csv) {
    emit(ctx, rows, out);
    return ok ? kExitOk : kExitVerification;
  }
  json report = report_header(ctx, &spec);
  report["result"] = json{{"delta", rational_json(delta)}, {"instances", entries}};
  report["checks"] = json::array();
  return finish(ctx, report, ok, start, out);
}

int cmd_chang(Context& ctx, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const SetFile in = load_input(ctx);
  const GroupSpec& spec = in.spec;
  const Rational kappa = parse_rational(ctx.flags.kappa);
  const Rational eta = parse_rational(ctx.flags.eta);
  if (in.set.empty()) throw DomainError("A must be non-empty");
  const unsigned floor_steps = energy_floor_steps(spec.order(), in.set.size(), kappa);
  const unsigned k_max = ctx.flags.k.value_or(floor_steps);
  const ChangOutcome run = chang_iterate(indicator(in.set), in.set, kappa, eta, k_max);

  std::vector<CheckRecord> checks;
  json steps = json::array();
  std::size_t broken = 0;
  for (const auto& s : run.steps) {
    if (!s.identity_holds || !s.decremented) ++broken;
    steps.push_back(json{{"x", element_json(spec, s.x)},
                         {"energy_before", rational_json(s.energy_before)},
                         {"energy_after", rational_json(s.energy_after)},
                         {"defect", rational_json(s.defect)},
                         {"identity_holds", s.identity_holds},
                         {"decremented", s.decremented}});
  }
  checks.push_back(make_check("decrement_steps", "Chang iteration", size_q(broken), "<=", Rational(0)));
  checks.push_back(make_check("energy_floor", "Chang iteration", run.floor_holds ? Rational(0) : Rational(1), "<=",
                              Rational(0)));
  if (run.is_invariant()) {
    checks.push_back(make_check("witness_count", "Chang iteration", eta * static_cast<unsigned long>(in.set.size()),
                                "<=", size_q(run.witnesses.size())));
  }
  const Rational shrink = pow(Rational(1) - kappa / 4, static_cast<unsigned>(run.tuple.size()));
  checks.push_back(make_check("telescoped_energy", "Chang iteration", run.energies.back(), "<=",
                              shrink * run.energies.front()));

  json energies = json::array();
  for (const auto& e : run.energies) energies.push_back(rational_json(e));
  json report = report_header(ctx, &spec);
  report["result"] = json{{"kappa", rational_json(kappa)},
                          {"eta", rational_json(eta)},
                          {"k_max", k_max},
                          {"energy_floor_steps", floor_steps},
                          {"outcome", run.is_invariant() ? "invariant" : "decrement"},
                          {"tuple", tuple_json(spec, run.tuple)},
                          {"energies", energies},
                          {"steps", steps},
                          {"witnesses", set_json(run.witnesses)}};
  report["checks"] = checks_json(checks);
  return finish(ctx, report, all_hold(checks), start, out);
}

int cmd_spectrum(Context& ctx, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const SetFile in = load_input(ctx);
  const GroupSpec& spec = in.spec;
  const Rational epsilon = parse_rational(ctx.flags.epsilon);
  const RationalFunc f = indicator(in.set);
  const DualFunc transform = dft(f);
  const CharSet large = spectrum(transform, l1_norm(f).get_d(), epsilon.get_d());
  const GroupSet perp = annihilator(large);

  json characters = json::array();
  for (auto g : large.indices()) {
    characters.push_back(json{{"gamma", element_json(spec, g)}, {"magnitude", std::abs(transform[g])}});
  }
  std::vector<CheckRecord> checks;
  checks.push_back(make_check("trivial_character_in_spectrum", "large spectrum",
                              large.contains(0) ? Rational(0) : Rational(1), "<=", Rational(0)));
  checks.push_back(make_check("annihilator_is_subgroup", "annihilator",
                              is_subgroup(perp) ? Rational(0) : Rational(1), "<=", Rational(0)));

  json report = report_header(ctx, &spec);
  report["result"] = json{{"epsilon", rational_json(epsilon)},
                          {"l1_norm", rational_json(l1_norm(f))},
                          {"spectrum_size", large.size()},
                          {"characters", characters},
                          {"annihilator_size", perp.size()},
                          {"annihilator", set_json(perp)}};
  report["checks"] = checks_json(checks);
  return finish(ctx, report, all_hold(checks), start, out);
}

json stage_json(const AlmostInvariantResult& s) {
  const GroupSpec& spec = s.v.spec();
  return json{{"epsilon", rational_json(s.epsilon)},
              {"delta", rational_json(s.delta)},
              {"kappa", rational_json(s.kappa)},
              {"cover", set_json(s.cover)},
              {"step_cap", s.step_cap},
              {"chang_tuple", tuple_json(spec, s.chang.tuple)},
              {"chang_witnesses", set_json(s.chang.witnesses)},
              {"subgroup_size", s.v.size()},
              {"f_support_size", s.f.support().size()},
              {"f_l1_norm", rational_json(l1_norm(s.f))},
              {"good", set_json(s.good)},
              {"good_size", s.good.size()},
              {"witnesses_in_good", s.witnesses_in_good}};
}

json petridis_json(const PetridisResult& p) {
  return json{{"Z", set_json(p.z)},
              {"ratio", rational_json(p.ratio)},
              {"ties_broken", p.ties_broken},
              {"minimality", p.exhaustive ? "exhaustive" : "restricted"}};
}

int cmd_pipeline(Context& ctx, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const SetFile in = load_input(ctx);
  DriverOptions options;
  options.petridis_cap = ctx.flags.cap;
  if (ctx.flags.kappa_rule == "as-written") {
    options.stage.kappa_rule = KappaRule::as_written;
  } else if (ctx.flags.kappa_rule != "corrected") {
    throw ParseError("--kappa-rule must be corrected or as-written");
  }
  json report = report_header(ctx, &in.spec);
  try {
    const PipelineReport r = theorem_driver(in.set, options);
    report["result"] = json{
        {"set_size", r.a.size()},
        {"K", rational_json(r.doubling)},
        {"exponent", r.exponent},
        {"petridis", petridis_json(r.petridis)},
        {"stage1", stage_json(r.stage1)},
        {"stage2", stage_json(r.stage2)},
        {"B_size", r.b.size()},
        {"B_doubling", rational_json(r.b_doubling)},
        {"h_l1_norm", rational_json(l1_norm(r.h))},
        {"lemma_bound",
         json{{"threshold", r.lemma_bound.threshold},
              {"spectrum_size", r.lemma_bound.spectrum_size},
              {"annihilator_size", r.lemma_bound.annihilator_size},
              {"bound", rational_json(r.lemma_bound.bound)},
              {"hypotheses_hold", r.lemma_bound.hypotheses_hold}}},
        {"final_threshold", r.final_threshold},
        {"final_spectrum_size", r.final_spectrum_size},
        {"final_annihilator_size", r.final_annihilator.size()},
        {"containment",
         json{{"threshold", rational_json(r.containment.threshold)},
              {"spectrum_size", r.containment.spectrum_size},
              {"annihilator_size", r.containment.annihilator_size},
              {"contained", r.containment.contained}}},
        {"reselection", petridis_json(r.reselection)},
        {"V3_size", r.v_final.size()},
        {"coset_count", r.coset_count},
        {"closure_size", r.closure.size()},
        {"ratio", rational_json(r.closure_ratio)},
        {"comparison_value", r.comparison_value},
    };
    report["checks"] = checks_json(r.checks);
    return finish(ctx, report, r.all_unconditional_hold(), start, out);
  } catch (const PipelineError& e) {
    report["error"] = e.what();
    report["checks"] = checks_json(e.checks);
    return finish(ctx, report, false, start, out);
  }
}

int cmd_verify(Context& ctx, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  if (ctx.flags.group.empty()) throw ParseError("verify-lemmas needs --group");
  const GroupSpec spec = parse_group(ctx.flags.group);
  SuiteOptions options;
  options.seed = ctx.flags.seed;
  if (ctx.flags.k) options.max_k = *ctx.flags.k;
  options.instances_per_family = std::min<std::size_t>(ctx.flags.count, 1000);
  const auto entries = run_verify_suite(spec, options);

  bool ok = true;
  json rows = json::array();
  for (const auto& e : entries) {
    ok = ok && e.passed();
    json row{{"name", e.name}, {"anchor", e.anchor}, {"instances", e.instances}, {"failures", e.failures}};
    if (!e.passed()) row["first_failure"] = e.first_failure;
    rows.push_back(row);
  }
  json report = report_header(ctx, &spec);
  report["result"] = json{{"suites", rows}};
  return finish(ctx, report, ok, start, out);
}

int cmd_gen(Context& ctx, std::ostream& out) {
  if (ctx.flags.group.empty()) throw ParseError("gen needs --group");
  const GroupSpec spec = parse_group(ctx.flags.group);
  const InstanceKind kind = parse_instance_kind(ctx.flags.family.empty() ? "random" : ctx.flags.family);
  InstanceParams params;
  params.size = ctx.flags.size.value_or(kind == InstanceKind::coset_union
                                            ? 2
                                            : static_cast<std::size_t>(std::min<std::uint64_t>(8, spec.order())));
  const GroupSet set = generate_instance(kind, spec, params, ctx.flags.seed);
  return emit(ctx, format_set_file(set), out);
}

}  // namespace

GroupSpec parse_group(std::string_view text) {
  std::vector<std::uint32_t> moduli;
  std::size_t pos = 0;
  auto number = [&](std::string_view what) {
    std::size_t end = pos;
    while (end < text.size() && text[end] >= '0' && text[end] <= '9') ++end;
    if (end == pos || end - pos > 9) throw ParseError("bad " + std::string(what) + " in group '" + std::string(text) + "'");
    const auto value = static_cast<std::uint32_t>(std::stoul(std::string(text.substr(pos, end - pos))));
    pos = end;
    return value;
  };
  while (true) {
    const std::uint32_t m = number("modulus");
    std::uint32_t times = 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      times = number("exponent");
      if (times == 0 || times > 64) throw ParseError("group exponent out of range in '" + std::string(text) + "'");
    }
    for (std::uint32_t i = 0; i < times; ++i) moduli.push_back(m);
    if (pos == text.size()) break;
    if (text[pos] != 'x') throw ParseError("unexpected '" + std::string(1, text[pos]) + "' in group '" + std::string(text) + "'");
    ++pos;
  }
  try {
    return GroupSpec(std::move(moduli));
  } catch (const std::exception& e) {
    throw ParseError(e.what());
  }
}

SetFile parse_set_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail_at(text, e.byte == 0 ? 0 : e.byte - 1, "malformed JSON");
  }
  if (!doc.is_object()) fail_at(text, 0, "set file must be a JSON object");
  if (!doc.contains("group") || !doc["group"].is_array()) fail_at(text, 0, "missing \"group\" array");
  const std::size_t group_pos = key_offset(text, "group");

  std::vector<std::uint32_t> moduli;
  for (const auto& m : doc["group"]) {
    if (!m.is_number_unsigned() || m.get<std::uint64_t>() > std::numeric_limits<std::uint32_t>::max()) {
      fail_at(text, group_pos, "moduli must be positive integers");
    }
    moduli.push_back(m.get<std::uint32_t>());
  }
  std::optional<GroupSpec> spec;
  try {
    spec.emplace(std::move(moduli));
  } catch (const std::exception& e) {
    fail_at(text, group_pos, e.what());
  }

  if (!doc.contains("elements") || !doc["elements"].is_array()) fail_at(text, 0, "missing \"elements\" array");
  GroupSet set(*spec);
  const auto& elements = doc["elements"];
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const auto& e = elements[i];
    if (!e.is_array() || e.size() != spec->rank()) {
      fail_at(text, element_offset(text, i),
              "element " + std::to_string(i) + " must list " + std::to_string(spec->rank()) + " coordinates");
    }
    GroupElement x;
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (!e[j].is_number_unsigned() || e[j].get<std::uint64_t>() >= spec->moduli()[j]) {
        fail_at(text, element_offset(text, i),
                "element " + std::to_string(i) + " coordinate " + std::to_string(j) + " is outside [0, " +
                    std::to_string(spec->moduli()[j]) + ")");
      }
      x.coords.push_back(e[j].get<std::uint32_t>());
    }
    const ElementIndex idx = spec->index_of(x);
    if (set.contains(idx)) fail_at(text, element_offset(text, i), "element " + std::to_string(i) + " is a duplicate");
    set.insert(idx);
  }
  return SetFile{*spec, std::move(set)};
}

SetFile parse_set_file(const std::string& path) { return parse_set_text(read_file(path)); }

std::string format_set_file(const GroupSet& set) {
  const GroupSpec& spec = set.spec();
  json group(std::vector<std::uint32_t>(spec.moduli().begin(), spec.moduli().end()));
  std::string out = "{\n  \"group\": " + group.dump() + ",\n  \"elements\": [";
  bool first = true;
  set.for_each([&](ElementIndex x) {
    out += first ? "\n    " : ",\n    ";
    out += element_json(spec, x).dump();
    first = false;
  });
  out += first ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Covering lemmas, Chang iteration and the Freiman-type pipeline on finite abelian groups"};
  app.require_subcommand(1);
  Flags flags;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--output", flags.output, "Write the report to this file");
    sub->add_option("--seed", flags.seed, "Random seed");
  };
  auto* cover = app.add_subcommand("cover", "Statistical and Ruzsa covers of a set, or a seeded sweep");
  cover->add_option("--input", flags.input, "Set file");
  cover->add_option("--group", flags.group, "Group for a sweep, e.g. 2^5 or 2x2x4");
  cover->add_option("--delta", flags.delta, "Covering parameter p/q");
  cover->add_option("--family", flags.family, "random, subgroup, coset_union or independent");
  cover->add_option("--size", flags.size, "Set size for random sweeps");
  cover->add_option("--count", flags.count, "Instances per family");
  cover->add_option("--format", flags.format)->check(CLI::IsMember({"json", "csv"}));
  add_common(cover);

  auto* chang = app.add_subcommand("chang", "Greedy Chang iteration on the indicator of a set");
  chang->add_option("--input", flags.input)->required();
  chang->add_option("--kappa", flags.kappa);
  chang->add_option("--eta", flags.eta);
  chang->add_option("--k", flags.k, "Step cap (default: the energy-floor bound)");
  add_common(chang);

  auto* spectrum_cmd = app.add_subcommand("spectrum", "Large spectrum of a set and its annihilator");
  spectrum_cmd->add_option("--input", flags.input)->required();
  spectrum_cmd->add_option("--epsilon", flags.epsilon);
  add_common(spectrum_cmd);

  auto* pipeline = app.add_subcommand("pipeline", "End-to-end run with a full audit trail");
  pipeline->add_option("--input", flags.input)->required();
  pipeline->add_option("--cap", flags.cap, "Largest set searched exhaustively for the Petridis subset");
  pipeline->add_option("--kappa-rule", flags.kappa_rule)->check(CLI::IsMember({"corrected", "as-written"}));
  add_common(pipeline);

  auto* verify = app.add_subcommand("verify-lemmas", "Property suite on seeded instance families");
  verify->add_option("--group", flags.group)->required();
  verify->add_option("--k", flags.k, "Largest k for the iterated and chain checks");
  verify->add_option("--count", flags.count, "Instances per family");
  add_common(verify);

  auto* gen = app.add_subcommand("gen", "Write a set file for a generated instance");
  gen->add_option("--group", flags.group)->required();
  gen->add_option("--family", flags.family);
  gen->add_option("--size", flags.size);
  add_common(gen);

  std::vector<std::string> argv_store{"freiman"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  Context ctx{app.get_subcommands().front()->get_name(), args, flags, {}};
  if (ctx.flags.format != "json" && ctx.command != "cover") {
    err << "error: --format csv is only available for cover\n";
    return kExitBadInput;
  }
  try {
    if (ctx.command == "cover") return cmd_cover(ctx, out);
    if (ctx.command == "chang") return cmd_chang(ctx, out);
    if (ctx.command == "spectrum") return cmd_spectrum(ctx, out);
    if (ctx.command == "pipeline") return cmd_pipeline(ctx, out);
    if (ctx.command == "verify-lemmas") return cmd_verify(ctx, out);
    return cmd_gen(ctx, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const StructuralError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitVerification;
  }
}

}  // namespace freiman::cli
