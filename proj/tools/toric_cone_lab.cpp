// toric-cone-lab: command-line front end for the exact lattice toolkit.
// Subcommands mirror the library operations; payloads are JSON (inline,
// @file, or "-" for stdin), outputs are single-line canonical JSON reports
// or a plain-text rendering via --format text.
//
// Exit codes: 0 success, 2 command-line usage errors, 3 malformed or
// schema-invalid payloads, 4 domain errors raised by the operations.

#include <toric/json_io.hpp>

#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace io = toric::io;
using io::json;
using toric::Cone;
using toric::HirzebruchParams;
using toric::Int;
using toric::Rat;
using toric::Vec;

namespace {

std::string load_payload(const std::string& arg) {
  if (arg == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw io::schema_error("cannot read file: " + arg.substr(1));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  return arg;
}

json parse_payload(const std::string& arg) { return json::parse(load_payload(arg)); }

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  return parts;
}

Int parse_int(const std::string& s, const std::string& what) {
  if (!io::wire::looks_like_integer(s))
    throw io::schema_error(what + ": not an integer: '" + s + "'");
  return Int(s);
}

Rat parse_rat(const std::string& s, const std::string& what) {
  return io::wire::rat_from(json(s), what);
}

// "a,b,m" with a possibly rational, e.g. "5/2,1,1"
HirzebruchParams parse_params_arg(const std::string& s, const std::string& what) {
  auto parts = split_commas(s);
  if (parts.size() != 3) throw io::schema_error(what + ": expected 'a,b,m'");
  Rat a = parse_rat(parts[0], what + ".a");
  Int b = parse_int(parts[1], what + ".b");
  Int m = parse_int(parts[2], what + ".m");
  return HirzebruchParams::from_abm(a, b, m);
}

Vec parse_vec_arg(const std::string& s, const std::string& what) {
  Vec v;
  for (const std::string& part : split_commas(s)) v.push_back(parse_int(part, what));
  return v;
}

unsigned decide_threads(unsigned requested, std::size_t work_items) {
  unsigned n = requested;
  if (n == 0) {
    n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
  }
  if (const char* cap = std::getenv("TORIC_CONE_LAB_THREADS")) {
    char* end = nullptr;
    unsigned long parsed = std::strtoul(cap, &end, 10);
    if (end && *end == '\0' && parsed > 0 && parsed < n) n = static_cast<unsigned>(parsed);
  }
  if (work_items > 0 && n > work_items) n = static_cast<unsigned>(work_items);
  return n == 0 ? 1 : n;
}

// ---- text rendering ------------------------------------------------------

std::string tuple_str(const json& arr) {
  std::string out = "(";
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (i) out += ", ";
    out += arr[i].is_string() ? arr[i].get<std::string>() : arr[i].dump();
  }
  return out + ")";
}

void render_params_line(std::ostream& os, const json& p) {
  os << "a = " << (p["a"].is_string() ? p["a"].get<std::string>() : p["a"].dump())
     << ", b = " << p["b"].dump() << ", c = " << p["c"].dump() << ", m = " << p["m"].dump();
}

std::string render_text(const std::string& cmd, const io::Report& rep) {
  std::ostringstream os;
  if (rep.status != "ok") {
    os << "error";
    for (const auto& d : rep.diagnostics) os << ": " << d;
    os << "\n";
    return os.str();
  }
  const json& r = rep.result;
  if (cmd == "check-delzant") {
    os << "delzant: " << (r["delzant"].get<bool>() ? "true" : "false") << "\n";
    os << "integral: " << (r["integral"].get<bool>() ? "true" : "false") << "\n";
    for (const auto& v : r["vertices"])
      os << "vertex " << v["vertex"].dump() << ": "
         << (v["unimodular_ok"].get<bool>() ? "ok" : "NOT a lattice basis") << "\n";
  } else if (cmd == "build-cone") {
    os << "dim: " << r["dim"].dump() << "\n";
    for (const auto& n : r["normals"]) os << "normal: " << tuple_str(n) << "\n";
    if (r.contains("rays"))
      for (const auto& ray : r["rays"]) os << "ray: " << tuple_str(ray) << "\n";
  } else if (cmd == "check-good") {
    os << "good: " << (r["verdict"].get<bool>() ? "true" : "false") << "\n";
    os << "primitive_ok: " << (r["primitive_ok"].get<bool>() ? "true" : "false") << "\n";
    os << "minimal_ok: " << (r["minimal_ok"].get<bool>() ? "true" : "false") << "\n";
    os << "faces_ok: " << (r["faces_ok"].get<bool>() ? "true" : "false") << "\n";
    if (!r["failing_face"].is_null())
      os << "failing face: dim " << r["failing_face"]["dim"].dump() << ", facets "
         << tuple_str(r["failing_face"]["facets"]) << "\n";
  } else if (cmd == "check-free") {
    os << "free: " << (r["free"].get<bool>() ? "true" : "false") << " (fiber "
       << tuple_str(r["fiber"]) << ")\n";
  } else if (cmd == "equiv") {
    os << "equivalent: " << (r["equivalent"].get<bool>() ? "true" : "false") << "\n";
    if (!r["witness"].is_null()) {
      os << "sign: " << r["witness"]["sign"].dump() << "\n";
      for (const auto& row : r["witness"]["transform"])
        os << "row: " << tuple_str(row) << "\n";
    }
  } else if (cmd == "classify") {
    os << "equivalent: " << (r["equivalent"].get<bool>() ? "true" : "false") << "\n";
  } else if (cmd == "count-tori") {
    os << "count: " << r["count"].dump() << "\n";
  } else if (cmd == "chain") {
    os << "k = " << r["k"].dump() << ", ell = " << r["length_ell"].dump() << "\n";
    for (const auto& p : r["members"]) {
      os << "  ";
      render_params_line(os, p);
      os << "\n";
    }
  } else if (cmd == "bundle") {
    os << "c1(L1) = " << r["c1_l1"].dump() << "\n";
    os << "c1(L2) = " << r["c1_l2"].dump() << "\n";
    os << "iso_class = " << r["iso_class"].dump() << "\n";
  } else if (cmd == "sweep") {
    os << "params: " << r["params"].dump() << ", pairs: " << r["pairs"].dump()
       << ", equivalent pairs: " << r["equivalent_pairs"].dump() << "\n";
    os << "disagreements: " << r["disagreements"].size() << "\n";
  } else {
    os << r.dump() << "\n";
  }
  return os.str();
}

// ---- sweep ---------------------------------------------------------------

json run_sweep(long bmax, long cmax, long mmax, unsigned threads_requested) {
  if (bmax < 1 || cmax < 1 || mmax < 0) throw io::schema_error("sweep: bounds out of range");
  std::vector<HirzebruchParams> grid;
  for (long b = 1; b <= bmax; ++b)
    for (long c = 1; c <= cmax; ++c)
      for (long m = 0; m <= mmax; ++m) grid.emplace_back(b, c, m);

  std::vector<Cone> cones;
  cones.reserve(grid.size());
  for (const auto& p : grid) cones.push_back(toric::hirzebruch_cone(p));

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = i; j < grid.size(); ++j) pairs.emplace_back(i, j);

  // Slot-indexed results so the aggregate is identical however the pairs
  // land on threads: 0 = agree inequivalent, 1 = agree equivalent,
  // 2 = search and closed form disagree.
  std::vector<unsigned char> verdicts(pairs.size(), 0);
  const unsigned nthreads = decide_threads(threads_requested, pairs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t slot = next.fetch_add(1);
      if (slot >= pairs.size()) return;
      auto [i, j] = pairs[slot];
      bool expected = toric::classify_hirzebruch(grid[i], grid[j]);
      bool with_sign = toric::find_equivalence(cones[i], cones[j], true).has_value();
      bool without_sign = toric::find_equivalence(cones[i], cones[j], false).has_value();
      if (with_sign != expected || without_sign != expected)
        verdicts[slot] = 2;
      else
        verdicts[slot] = expected ? 1 : 0;
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  json disagreements = json::array();
  long equivalent_pairs = 0;
  for (std::size_t s = 0; s < pairs.size(); ++s) {
    auto [i, j] = pairs[s];
    if (verdicts[s] == 2) {
      json d;
      d["p1"] = io::params_to_json(grid[i]);
      d["p2"] = io::params_to_json(grid[j]);
      disagreements.push_back(std::move(d));
    } else if (verdicts[s] == 1 && i != j) {
      ++equivalent_pairs;
    }
  }
  json out;
  out["bmax"] = bmax;
  out["cmax"] = cmax;
  out["mmax"] = mmax;
  out["params"] = grid.size();
  out["pairs"] = pairs.size();
  out["equivalent_pairs"] = equivalent_pairs;
  out["disagreements"] = std::move(disagreements);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact lattice toolkit for moment cones over Delzant polygons"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "toric-cone-lab 1.0.0");

  std::string format = "json";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "text"}));

  std::function<json()> run;
  std::string active;

  // check-delzant
  {
    auto* sub = app.add_subcommand("check-delzant", "Delzant test for a polygon");
    auto opt_poly = std::make_shared<std::string>();
    sub->add_option("--polytope", *opt_poly, "polytope JSON (inline, @file, or -)")->required();
    sub->callback([&, opt_poly] {
      active = "check-delzant";
      run = [opt_poly] {
        auto poly = io::polytope_from_json(parse_payload(*opt_poly));
        json r = io::delzant_to_json(toric::is_delzant(poly));
        r["integral"] = toric::is_integral(poly);
        return r;
      };
    });
  }

  // build-cone
  {
    auto* sub = app.add_subcommand("build-cone", "standard cone over a Delzant polygon");
    auto opt_poly = std::make_shared<std::string>();
    auto opt_hirz = std::make_shared<std::string>();
    sub->add_option("--polytope", *opt_poly, "polytope JSON (inline, @file, or -)");
    sub->add_option("--hirzebruch", *opt_hirz, "trapezoid parameters 'a,b,m'");
    sub->callback([&, opt_poly, opt_hirz] {
      active = "build-cone";
      run = [opt_poly, opt_hirz] {
        if (opt_poly->empty() == opt_hirz->empty())
          throw io::schema_error("build-cone: provide exactly one of --polytope, --hirzebruch");
        Cone c = opt_hirz->empty()
                     ? toric::standard_cone(io::polytope_from_json(parse_payload(*opt_poly)))
                     : toric::hirzebruch_cone(parse_params_arg(*opt_hirz, "hirzebruch"));
        return io::cone_to_json(c);
      };
    });
  }

  // check-good
  {
    auto* sub = app.add_subcommand("check-good", "lattice regularity of a cone");
    auto opt_cone = std::make_shared<std::string>();
    sub->add_option("--cone", *opt_cone, "cone JSON (inline, @file, or -)")->required();
    sub->callback([&, opt_cone] {
      active = "check-good";
      run = [opt_cone] {
        return io::goodness_to_json(toric::is_good(io::cone_from_json(parse_payload(*opt_cone))));
      };
    });
  }

  // check-free
  {
    auto* sub = app.add_subcommand("check-free", "freeness of the lattice circle action");
    auto opt_cone = std::make_shared<std::string>();
    auto opt_fiber = std::make_shared<std::string>();
    sub->add_option("--cone", *opt_cone, "cone JSON (inline, @file, or -)")->required();
    sub->add_option("--fiber", *opt_fiber, "fiber direction 'x,y,...' (default last axis)");
    sub->callback([&, opt_cone, opt_fiber] {
      active = "check-free";
      run = [opt_cone, opt_fiber] {
        Cone c = io::cone_from_json(parse_payload(*opt_cone));
        Vec fiber;
        if (opt_fiber->empty()) {
          fiber.assign(c.dim(), 0);
          fiber[c.dim() - 1] = 1;
        } else {
          fiber = parse_vec_arg(*opt_fiber, "fiber");
        }
        json r;
        r["free"] = toric::circle_action_free(c, fiber);
        r["fiber"] = io::wire::to_json(fiber);
        return r;
      };
    });
  }

  // equiv
  {
    auto* sub = app.add_subcommand("equiv", "search for a unimodular equivalence");
    auto c1 = std::make_shared<std::string>(), c2 = std::make_shared<std::string>();
    auto p1 = std::make_shared<std::string>(), p2 = std::make_shared<std::string>();
    auto nosign = std::make_shared<bool>(false);
    sub->add_option("--c1", *c1, "first cone JSON");
    sub->add_option("--c2", *c2, "second cone JSON");
    sub->add_option("--p1", *p1, "first trapezoid 'a,b,m'");
    sub->add_option("--p2", *p2, "second trapezoid 'a,b,m'");
    sub->add_flag("--no-sign", *nosign, "forbid matches through the reflected cone");
    sub->callback([&, c1, c2, p1, p2, nosign] {
      active = "equiv";
      run = [c1, c2, p1, p2, nosign] {
        const bool cones_given = !c1->empty() || !c2->empty();
        const bool params_given = !p1->empty() || !p2->empty();
        if (cones_given == params_given)
          throw io::schema_error("equiv: provide either --c1/--c2 or --p1/--p2");
        Cone first = cones_given
                         ? io::cone_from_json(parse_payload(*c1))
                         : toric::hirzebruch_cone(parse_params_arg(*p1, "p1"));
        Cone second = cones_given
                          ? io::cone_from_json(parse_payload(*c2))
                          : toric::hirzebruch_cone(parse_params_arg(*p2, "p2"));
        auto w = toric::find_equivalence(first, second, !*nosign);
        json r;
        r["equivalent"] = w.has_value();
        r["witness"] = w ? io::witness_to_json(*w) : json(nullptr);
        return r;
      };
    });
  }

  // classify
  {
    auto* sub = app.add_subcommand("classify", "closed-form equivalence of two trapezoid cones");
    auto p1 = std::make_shared<std::string>(), p2 = std::make_shared<std::string>();
    sub->add_option("--p1", *p1, "first trapezoid 'a,b,m'")->required();
    sub->add_option("--p2", *p2, "second trapezoid 'a,b,m'")->required();
    sub->callback([&, p1, p2] {
      active = "classify";
      run = [p1, p2] {
        json r;
        r["equivalent"] = toric::classify_hirzebruch(parse_params_arg(*p1, "p1"),
                                                     parse_params_arg(*p2, "p2"));
        return r;
      };
    });
  }

  // count-tori
  {
    auto* sub = app.add_subcommand("count-tori", "maximal torus count bound for (a, b)");
    auto a = std::make_shared<std::string>(), b = std::make_shared<std::string>();
    sub->add_option("a", *a, "numerator parameter")->required();
    sub->add_option("b", *b, "denominator parameter")->required();
    sub->callback([&, a, b] {
      active = "count-tori";
      run = [a, b] {
        Int av = parse_int(*a, "a"), bv = parse_int(*b, "b");
        json r;
        r["a"] = io::wire::to_json(av);
        r["b"] = io::wire::to_json(bv);
        r["count"] = io::wire::to_json(toric::tori_lower_bound(av, bv));
        return r;
      };
    });
  }

  // chain
  {
    auto* sub = app.add_subcommand("chain", "trapezoid chain for (a, b)");
    auto a = std::make_shared<std::string>(), b = std::make_shared<std::string>();
    auto parity = std::make_shared<std::string>("strict");
    sub->add_option("a", *a, "integer a > b")->required();
    sub->add_option("b", *b, "integer b >= 1")->required();
    sub->add_option("--parity", *parity, "strict or even")
        ->check(CLI::IsMember({"strict", "even"}));
    sub->callback([&, a, b, parity] {
      active = "chain";
      run = [a, b, parity] {
        auto chain = toric::hirzebruch_chain(
            parse_int(*a, "a"), parse_int(*b, "b"),
            *parity == "even" ? toric::ChainParity::even : toric::ChainParity::strict);
        json r = io::chain_to_json(chain);
        r["parity"] = *parity;
        return r;
      };
    });
  }

  // bundle
  {
    auto* sub = app.add_subcommand("bundle", "Chern data of the sphere bundle for (a, b)");
    auto a = std::make_shared<std::string>(), b = std::make_shared<std::string>();
    sub->add_option("a", *a, "integer a, coprime to b")->required();
    sub->add_option("b", *b, "integer b >= 1")->required();
    sub->callback([&, a, b] {
      active = "bundle";
      run = [a, b] {
        return io::bundle_to_json(toric::bundle_invariant(parse_int(*a, "a"), parse_int(*b, "b")));
      };
    });
  }

  // sweep
  {
    auto* sub = app.add_subcommand(
        "sweep", "grid agreement check between the search and the closed form");
    auto bmax = std::make_shared<long>(0), cmax = std::make_shared<long>(0),
         mmax = std::make_shared<long>(0);
    auto threads = std::make_shared<unsigned>(0);
    sub->add_option("--bmax", *bmax, "largest b")->required();
    sub->add_option("--cmax", *cmax, "largest c")->required();
    sub->add_option("--mmax", *mmax, "largest m")->required();
    sub->add_option("--threads", *threads, "worker threads (0 = auto)");
    sub->callback([&, bmax, cmax, mmax, threads] {
      active = "sweep";
      run = [bmax, cmax, mmax, threads] { return run_sweep(*bmax, *cmax, *mmax, *threads); };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  io::Report report;
  int code = 0;
  try {
    report = {"ok", run(), {}};
  } catch (const io::schema_error& e) {
    report = {"error", nullptr, {e.what()}};
    code = 3;
  } catch (const json::exception& e) {
    report = {"error", nullptr, {e.what()}};
    code = 3;
  } catch (const std::invalid_argument& e) {
    report = {"error", nullptr, {e.what()}};
    code = 3;
  } catch (const std::exception& e) {
    report = {"error", nullptr, {e.what()}};
    code = 4;
  }

  // A sweep that found disagreements is an error outcome even though the
  // computation itself succeeded.
  if (code == 0 && active == "sweep" && !report.result["disagreements"].empty()) {
    report.status = "error";
    report.diagnostics.push_back("search and closed form disagree");
    code = 4;
  }

  if (format == "json")
    std::cout << io::emit_json(report);
  else
    std::cout << render_text(active, report);
  return code;
}
