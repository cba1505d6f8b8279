#include "lpds/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "lpds/discharge.hpp"
#include "lpds/error.hpp"
#include "lpds/lemmas.hpp"
#include "lpds/render.hpp"
#include "lpds/search.hpp"
#include "lpds/verify.hpp"

namespace lpds::cli {
namespace {

// Bad input detected after option parsing; exits 2 like a parse error.
struct InputError : Error {
  using Error::Error;
};

struct SourceArgs {
  std::string source;
  std::string x;
  std::string window;
};

void add_source(CLI::App* cmd, SourceArgs& a) {
  cmd->add_option("source", a.source, "pattern or window file, or catalog:L1|L2|LX")->required();
  cmd->add_option("--x", a.x, "X for catalog:LX: \"period=P bits=..\" or \"set={..}\"");
}

std::optional<WindowBounds> bounds_of(const std::string& text) {
  if (text.empty()) return std::nullopt;
  try {
    return parse_bounds(text);
  } catch (const Error& e) {
    throw InputError(e.what());
  }
}

PatternOrWindow load(const SourceArgs& a) {
  try {
    const std::string prefix = "catalog:";
    if (a.source.rfind(prefix, 0) == 0) {
      const std::string name = a.source.substr(prefix.size());
      if (name == "L1") return catalog_l1();
      if (name == "L2") return catalog_l2();
      if (name != "LX") throw Error("unknown catalog pattern '" + name + "'");
      if (a.x.empty()) throw Error("catalog:LX needs --x");
      return catalog(CatalogName::LX, parse_x(a.x), bounds_of(a.window));
    }
    std::ifstream in(a.source);
    if (!in) throw Error("cannot read " + a.source);
    std::stringstream text;
    text << in.rdbuf();
    return parse(text.str());
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    throw InputError(e.what());
  }
}

const PeriodicPattern& need_pattern(const PatternOrWindow& s, const std::string& what) {
  if (const auto* p = std::get_if<PeriodicPattern>(&s)) return *p;
  throw InputError(what + " needs a periodic pattern, not a window");
}

int do_verify(const SourceArgs& a, bool no_lift, std::ostream& out) {
  const PatternOrWindow s = load(a);
  if (const auto* w = std::get_if<FiniteWindow>(&s)) {
    const WindowReport r = verify_window(*w);
    out << format_report(r);
    return r.dominating && r.locating && r.pairing == PairingStatus::paired ? 0 : 1;
  }
  const VerificationReport r = verify_lpds(std::get<PeriodicPattern>(s), {.allow_lift = !no_lift});
  out << format_report(r);
  return r.valid() ? 0 : 1;
}

Point parse_point(const std::string& text) {
  std::int64_t x = 0, y = 0;
  char a = 0, comma = 0, b = 0;
  std::istringstream in(text);
  if (!(in >> a >> x >> comma >> y >> b) || a != '(' || comma != ',' || b != ')')
    throw InputError("malformed point: " + text);
  return {x, y};
}

int do_density(const SourceArgs& a, std::optional<std::int64_t> k, const std::string& center,
               std::ostream& out) {
  const PatternOrWindow s = load(a);
  if (k && *k < 0) throw InputError("--k must be nonnegative");
  if (const auto* p = std::get_if<PeriodicPattern>(&s)) {
    out << "density " << to_string(density(*p)) << '\n';
    if (k) {
      const Point c = center.empty() ? Point{0, 0} : parse_point(center);
      const Rational wd = window_density(*p, c, *k);
      out << "window-density k=" << *k << " center=" << c << ' ' << to_string(wd) << '\n';
    }
    return 0;
  }
  const auto& w = std::get<FiniteWindow>(s);
  std::int64_t members = 0;
  for (std::int64_t y = w.y0(); y <= w.y1(); ++y)
    for (std::int64_t x = w.x0(); x <= w.x1(); ++x) members += w.contains({x, y});
  out << "window-fraction " << to_string(Rational(members, w.width() * w.height())) << '\n';
  if (k) {
    const Point c = center.empty() ? Point{(w.x0() + w.x1()) / 2, (w.y0() + w.y1()) / 2} : parse_point(center);
    out << "window-density k=" << *k << " center=" << c << ' ' << to_string(window_density(w, c, *k)) << '\n';
  }
  return 0;
}

int do_catalog(const std::string& name, const std::string& x, const std::string& window, std::ostream& out) {
  SourceArgs a{"catalog:" + name, x, window};
  const PatternOrWindow s = load(a);
  if (const auto* p = std::get_if<PeriodicPattern>(&s)) out << serialize(*p);
  else out << serialize(std::get<FiniteWindow>(s));
  return 0;
}

int do_discharge(const SourceArgs& a, int theorem, std::ostream& out) {
  const PatternOrWindow loaded = load(a);
  const PeriodicPattern& pattern = need_pattern(loaded, "discharge");
  const VerificationReport r = verify_lpds(pattern);
  if (!r.valid() || !r.classification) {
    out << format_report(r);
    out << "discharge needs a verified LPDS\n";
    return 1;
  }
  const Classification& c = *r.classification;
  if (theorem == 1) {
    const Theorem1Result t = charge_thm1(c);
    out << format_charges(c, t);
    return t.ok() && t.ch1.min() >= Rational(1) ? 0 : 1;
  }
  const Theorem2Result t = charge_thm2(c);
  out << format_charges(c, t);
  return t.ok() && t.ch5.min() >= Rational(1) ? 0 : 1;
}

int do_render(const SourceArgs& a, const std::string& format, const std::string& output, std::ostream& out) {
  const auto b = bounds_of(a.window);
  if (!b) throw InputError("render needs --window");
  const PatternOrWindow s = load(a);
  const std::string text = format == "svg" ? render_svg(s, *b) : render_ascii(s, *b);
  if (output.empty()) {
    out << text;
  } else {
    std::ofstream file(output);
    if (!(file << text)) throw Error("cannot write " + output);
  }
  return 0;
}

int do_check(const std::string& target, const CheckOptions& options, std::ostream& out) {
  std::vector<LemmaVerdict> verdicts;
  if (target == "lemma1.1") verdicts.push_back(check_lemma1(1, options));
  else if (target == "lemma1.2") verdicts.push_back(check_lemma1(2, options));
  else if (target == "lemma1.3") verdicts.push_back(check_lemma1(3, options));
  else if (target == "r-claims") verdicts = check_r_claims();
  else if (target == "adjacent-sum") verdicts.push_back(check_adjacent_sum(options));
  else verdicts = check_all(options);
  bool all = true;
  for (const auto& v : verdicts) {
    out << format_verdict(v) << std::flush;
    all = all && v.holds();
  }
  return all ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Locating paired-dominating sets in the king grid"};
  app.name("lpds");
  app.require_subcommand(1, 1);

  SourceArgs src;
  bool no_lift = false;
  auto* verify = app.add_subcommand("verify", "verify a periodic pattern or a finite window");
  add_source(verify, src);
  verify->add_option("--window", src.window, "bounds for a finite catalog:LX");
  verify->add_flag("--no-lift", no_lift, "require the matching at the given period");

  std::optional<std::int64_t> k;
  std::string center;
  auto* dens = app.add_subcommand("density", "exact density, and a window estimate with --k");
  add_source(dens, src);
  dens->add_option("--window", src.window, "bounds for a finite catalog:LX");
  dens->add_option("--k", k, "radius of the k-neighbourhood");
  dens->add_option("--center", center, "centre (x,y) of the k-neighbourhood");

  std::string cat_name;
  auto* cat = app.add_subcommand("catalog", "emit a catalog pattern");
  cat->add_option("name", cat_name)->required()->check(CLI::IsMember({"L1", "L2", "LX"}));
  cat->add_option("--x", src.x, "X: \"period=P bits=..\" or \"set={..}\"");
  cat->add_option("--window", src.window, "bounds, required for a finite X");

  std::string lattice;
  SearchConfig config;
  std::optional<int> max_k;
  std::optional<std::uint64_t> budget;
  bool no_symmetry = false;
  auto* search = app.add_subcommand("search", "minimum LPDS at a given period");
  search->add_option("--lattice", lattice, "\"u=(a,b) v=(c,d)\"")->required();
  search->add_option("--max-k", max_k, "largest cardinality tried");
  search->add_option("--workers", config.workers, "worker threads")->check(CLI::PositiveNumber);
  search->add_option("--budget", budget, "node budget");
  search->add_flag("--no-symmetry", no_symmetry, "do not fix the first cell in S");
  search->add_flag("--allow-large", config.allow_large, "lift the |det| <= 64 guard");

  std::string target;
  CheckOptions check_options;
  auto* check = app.add_subcommand("check", "mechanised local lemmas");
  check->add_option("target", target)
      ->required()
      ->check(CLI::IsMember({"lemma1.1", "lemma1.2", "lemma1.3", "r-claims", "adjacent-sum", "all"}));
  check->add_option("--budget", check_options.node_budget, "node budget per target");
  check->add_option("--workers", check_options.workers, "worker threads")->check(CLI::PositiveNumber);

  int theorem = 0;
  auto* discharge = app.add_subcommand("discharge", "discharge pipeline charges per residue");
  add_source(discharge, src);
  discharge->add_option("--theorem", theorem)->required()->check(CLI::IsMember({1, 2}));

  std::string format = "ascii", output;
  auto* render = app.add_subcommand("render", "draw a pattern as text or SVG");
  add_source(render, src);
  render->add_option("--format", format)->check(CLI::IsMember({"ascii", "svg"}));
  render->add_option("--window", src.window, "\"x=[x0..x1] y=[y0..y1]\"")->required();
  render->add_option("-o,--output", output, "write to a file instead of stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "lpds: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*verify) return do_verify(src, no_lift, out);
    if (*dens) return do_density(src, k, center, out);
    if (*cat) return do_catalog(cat_name, src.x, src.window, out);
    if (*search) {
      try {
        config.basis = parse_basis(lattice);
      } catch (const Error& e) {
        throw InputError(e.what());
      }
      config.max_cardinality = max_k;
      config.node_budget = budget;
      config.symmetry_reduction = !no_symmetry;
      SearchResult r;
      try {
        r = minimum_lpds(config);
      } catch (const Error& e) {
        throw InputError(e.what());
      }
      out << format_result(r);
      return r.status == SearchStatus::budget_exceeded ? 1 : 0;
    }
    if (*check) return do_check(target, check_options, out);
    if (*discharge) return do_discharge(src, theorem, out);
    if (*render) return do_render(src, format, output, out);
  } catch (const InputError& e) {
    err << "lpds: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "lpds: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace lpds::cli
