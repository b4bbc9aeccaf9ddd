// dsmodp command line.

#include <CLI11.hpp>
#include <iostream>

#include "dsmodp/dsmodp.hpp"
#include "dsmodp/serialize.hpp"

using namespace dsmodp;

namespace {

constexpr int kExitMath = 2;
constexpr int kExitNone = 3;

struct Common {
  unsigned long p = 7;
  bool json = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--p", c.p, "prime")->required();
  sub->add_flag("--json", c.json, "JSON output");
}

void print(const Common& c, const json& j, const std::string& text) {
  if (c.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

std::string config_text(const Configuration& c) {
  std::string s = format_types(c) + "  e=" + std::to_string(c.euler) + "  deg N=" + std::to_string(c.conductor_degree) + "\n";
  for (const auto& f : c.fibres) s += "  " + f.place.to_string() + ": " + to_string(f.type) + " (v(D)=" + std::to_string(f.vdelta) + ")\n";
  return s;
}

std::string report_text(const DSReport& r) {
  std::string s = "M=" + std::to_string(r.M) + " defect=" + std::to_string(r.defect) + " DS bound=" + std::to_string(r.ds_bound) +
                  " min bound=" + std::to_string(r.min_bound) + "\n";
  s += std::string("counterexample: ") + (r.is_counterexample ? "yes" : "no") + (r.is_maximal ? " (maximal)" : "") + "\n";
  s += "common factors:";
  for (const auto& w : r.common_factors) s += " " + to_string(w);
  s += "\ninfinity: " + to_string(r.infinity_type) + "\n";
  return s + config_text(r.configuration);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Davenport-Stothers inequalities in characteristic p"};
  app.require_subcommand(1);

  Common common;
  std::string f_src, g_src, a_src, b_src, surface_name, map_src, twist_src, profile_src, config_src;
  int M = 0, from = 1, to = 1, deg = 0, max_deg = 2;
  unsigned long long insep = 1;

  auto* verify = app.add_subcommand("verify", "defect and fibres of a pair (f, g)");
  add_common(verify, common);
  verify->add_option("--f", f_src)->required();
  verify->add_option("--g", g_src)->required();

  auto* fibres = app.add_subcommand("fibres", "singular fibres of y^2 = x^3 + Ax + B or of a pair (f, g)");
  add_common(fibres, common);
  auto* of = fibres->add_option("--f", f_src);
  auto* og = fibres->add_option("--g", g_src);
  auto* oa = fibres->add_option("--A", a_src);
  auto* ob = fibres->add_option("--B", b_src);
  of->needs(og);
  og->needs(of);
  oa->needs(ob);
  ob->needs(oa);
  of->excludes(oa);
  oa->excludes(of);

  auto* criterion = app.add_subcommand("criterion", "whether the Criterion proves DS(M)");
  add_common(criterion, common);
  criterion->add_option("--M", M)->required()->check(CLI::PositiveNumber);

  auto* construct = app.add_subcommand("construct", "counterexample to DS(M)");
  add_common(construct, common);
  construct->add_option("--M", M)->required()->check(CLI::PositiveNumber);

  auto* status = app.add_subcommand("status", "status of DS(M) for a range of M");
  add_common(status, common);
  status->add_option("--from", from)->required()->check(CLI::PositiveNumber);
  status->add_option("--to", to)->required()->check(CLI::PositiveNumber);

  auto* basechange = app.add_subcommand("basechange", "fibres of a catalogue surface after base change");
  add_common(basechange, common);
  basechange->add_option("--surface", surface_name)->required()->check(CLI::IsMember({"Y", "Ytilde", "Yhat"}));
  basechange->add_option("--map", map_src)->required();
  basechange->add_option("--twist", twist_src);

  auto* findmap = app.add_subcommand("findmap", "polynomial map with a given ramification profile");
  add_common(findmap, common);
  findmap->add_option("--deg", deg)->required()->check(CLI::PositiveNumber);
  findmap->add_option("--profile", profile_src)->required();

  auto* integral = app.add_subcommand("integral", "integral points of Y^2 = X^3 + (t^2-1)^2");
  add_common(integral, common);
  integral->add_option("--max-deg", max_deg)->required();

  auto* bounds = app.add_subcommand("bounds", "C-bounds and Pesenti-Szpiro for a configuration");
  add_common(bounds, common);
  bounds->add_option("--config", config_src)->required();
  bounds->add_option("--insep", insep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  const Coeff p = static_cast<Coeff>(common.p);
  try {
    if (common.p > 0xffffffffUL) throw Error(ErrorCode::InvalidArgument, "p too large");
    if (*verify) {
      DSReport r = ds_report(parse_poly_expr(f_src, p), parse_poly_expr(g_src, p));
      print(common, to_json_value(r), report_text(r));
    } else if (*fibres) {
      if (f_src.empty() && a_src.empty()) throw CLI::RequiredError("--f/--g or --A/--B");
      WeierstrassSurface s = !f_src.empty() ? WeierstrassSurface::from_fg(parse_poly_expr(f_src, p), parse_poly_expr(g_src, p))
                                            : WeierstrassSurface::make(parse_poly_expr(a_src, p), parse_poly_expr(b_src, p));
      Configuration c = configuration(s);
      print(common, to_json_value(c), config_text(c));
    } else if (*criterion) {
      PrimeModulus check(p);
      auto w = criterion_witness(M, p);
      json j = {{"p", p}, {"M", M}, {"holds", !w}};
      if (w) j["n"] = *w;
      print(common, j, w ? "false (n=" + std::to_string(*w) + ")\n" : std::string("true\n"));
    } else if (*construct) {
      auto w = construct_witness(p, M);
      if (!w) {
        print(common, json{{"p", p}, {"M", M}, {"witness", nullptr}}, "NONE\n");
        return kExitNone;
      }
      std::string text = "f = " + to_string(w->pair.f) + "\ng = " + to_string(w->pair.g) + "\nvia " + w->strategy + " from " + to_string(w->root);
      for (const auto& s : w->stages) text += ", " + s.label;
      text += ", q=" + std::to_string(w->q);
      if (w->padding) text += ", padded " + std::to_string(w->padding);
      print(common, to_json_value(*w), text + "\n" + config_text(w->configuration));
    } else if (*status) {
      StatusTable t = status_table(p, from, to);
      std::string text;
      for (auto it = t.entries.rbegin(); it != t.entries.rend(); ++it) {
        text += std::to_string(it->M) + "  " + to_string(it->status);
        if (it->status == Status::Holds) text += "  (" + it->reason + ")";
        if (it->witness) text += "  " + format_types(it->witness->configuration);
        text += "\n";
      }
      print(common, to_json_value(t), text);
    } else if (*basechange) {
      WeierstrassSurface s = base_change(catalogue_surface(parse_catalogue_name(surface_name), p), parse_rational_map(map_src, p));
      if (!twist_src.empty()) s = quadratic_twist(s, parse_poly_expr(twist_src, p));
      Configuration c = configuration(s);
      json j = to_json_value(c);
      j["A"] = to_string(s.A());
      j["B"] = to_string(s.B());
      print(common, j, "A = " + to_string(s.A()) + "\nB = " + to_string(s.B()) + "\n" + config_text(c));
    } else if (*findmap) {
      json pj;
      try {
        pj = json::parse(profile_src);
      } catch (const json::exception& e) {
        std::cerr << "error: bad --profile: " << e.what() << "\n";
        return 1;
      }
      auto m = find_base_change(p, deg, profile_from_json(pj, deg));
      if (!m) {
        print(common, json{{"map", nullptr}}, "NONE\n");
        return kExitNone;
      }
      print(common, to_json_value(*m), to_string(*m) + "\n");
    } else if (*integral) {
      auto pts = enumerate_integral_points(p, max_deg);
      json arr = json::array();
      std::string text;
      for (const auto& P : pts) {
        arr.push_back(to_json_value(P));
        text += to_string(P) + "\n";
      }
      if (!cube_root_of_unity(p)) text += "note: no cube root of unity in F_" + std::to_string(p) + ", only phi^0, phi^3 act\n";
      print(common, json{{"p", p}, {"max_deg", max_deg}, {"points", arr}}, text);
    } else if (*bounds) {
      json cj;
      try {
        cj = json::parse(config_src);
      } catch (const json::exception& e) {
        std::cerr << "error: bad --config: " << e.what() << "\n";
        return 1;
      }
      Configuration c = configuration_from_json(cj, p);
      bool ps = ps_bound_check(c, insep);
      json fib = json::array();
      std::string text = format_types(c) + "  e=" + std::to_string(c.euler) + "  deg N=" + std::to_string(c.conductor_degree) + "\n";
      for (const auto& [f, v] : c_bounds_check(c)) {
        fib.push_back({{"type", to_string(f.type)}, {"verdict", to_string(v)}});
        text += "  " + to_string(f.type) + ": " + to_string(v) + "\n";
      }
      text += std::string("Pesenti-Szpiro: ") + (ps ? "OK" : "VIOLATES") + "\n";
      print(common, json{{"config", to_json_value(c)}, {"c_bounds", fib}, {"ps_bound", ps ? "OK" : "VIOLATES"}, {"insep", insep}}, text);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMath;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
