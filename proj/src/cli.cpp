#include "setlab/cli.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string_view>

#include "setlab/constructions.hpp"
#include "setlab/duality.hpp"
#include "setlab/errors.hpp"
#include "setlab/io.hpp"
#include "setlab/predicates.hpp"
#include "setlab/search.hpp"

namespace setlab {
namespace {

constexpr const char* kUsage =
    "usage: setlab <command> [flags]\n"
    "\n"
    "commands:\n"
    "  check <family-file> --d D --s S [--t T] [--pair I,J]\n"
    "      test the (d,s,t) condition; report the first violating tuple and,\n"
    "      for --pair, whether the family is (I,J)-unstable\n"
    "  construct <name> [params]\n"
    "      emit a named family in the text format; names and parameters:\n"
    "        star      --n N --k K --center C\n"
    "        hk        --n N --k K\n"
    "        gr        --n N --k K --parts A|B|... --thresholds T1,T2,...\n"
    "        fj        --n N --k K --t T --j J\n"
    "        fprime    --n N --k K --t T\n"
    "        twin2star --n N --x X --y Y --assign Z:C,Z:C,...\n"
    "        conj41    --n N --k K --x X --b E1,E2,...\n"
    "        g4        --n N --k K --b1 E,.. --b2 E,.. --x X --y Y\n"
    "  search --n N --pool SPEC --d D --s S [--t T] [--stable]\n"
    "         [--nonintersecting] [--max-size U]\n"
    "      exact maximum family over a vertex pool; SPEC is level:K, upto:U,\n"
    "      power, or file:PATH\n"
    "  verify <theorem> --n N|A..B|A,B,... [--k K] [--d D] [--s S] [--u U]\n"
    "      check a named statement at given ground sizes; theorems: mubayi,\n"
    "      stable-mubayi, frankl, prop42, conj41, thm62, thm71, thm74\n"
    "  duality <family-file> --pair I,J --d D --s S [--t T]\n"
    "      find an (I,J)-instability witness and print the witness-swap\n"
    "      trace with its round-trip verification\n"
    "  stabilize <family-file>\n"
    "      apply shifts until stable; the applied pairs appear as comments\n"
    "  shadow <family-file> --ell L [--katona-t T]\n"
    "      emit the L-shadow; with --katona-t also the shadow lower bound\n"
    "\n"
    "common flags: --output PATH, --format text|json (search/verify),\n"
    "  --threads N (or SETLAB_THREADS), --vertex-cap N, --canonical-limit N,\n"
    "  --checkpoint PATH, --checkpoint-every NODES, --node-budget N,\n"
    "  --collect-cap N\n";

struct ParsedArgs {
  std::vector<std::string> positional;
  std::map<std::string, std::string> flags;
};

ParsedArgs parse_args(const std::vector<std::string>& args, std::size_t first,
                      const std::set<std::string>& valued,
                      const std::set<std::string>& boolean) {
  ParsedArgs out;
  for (std::size_t i = first; i < args.size(); ++i) {
    const std::string& tok = args[i];
    if (tok.rfind("--", 0) == 0) {
      if (boolean.count(tok)) {
        out.flags[tok] = "1";
        continue;
      }
      if (!valued.count(tok)) throw ArgumentError("unknown flag: " + tok);
      if (out.flags.count(tok)) throw ArgumentError("duplicate flag: " + tok);
      if (i + 1 >= args.size()) throw ArgumentError("flag needs a value: " + tok);
      out.flags[tok] = args[++i];
    } else {
      out.positional.push_back(tok);
    }
  }
  return out;
}

int to_int(std::string_view text, const std::string& what) {
  int value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw ArgumentError("malformed integer for " + what + ": '" + std::string(text) + "'");
  return value;
}

int int_flag(const ParsedArgs& a, const std::string& name) {
  auto it = a.flags.find(name);
  if (it == a.flags.end()) throw ArgumentError("missing required flag: " + name);
  return to_int(it->second, name);
}

int int_flag_or(const ParsedArgs& a, const std::string& name, int fallback) {
  auto it = a.flags.find(name);
  return it == a.flags.end() ? fallback : to_int(it->second, name);
}

std::optional<std::string> str_flag(const ParsedArgs& a, const std::string& name) {
  auto it = a.flags.find(name);
  if (it == a.flags.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (true) {
    std::size_t next = text.find(sep, pos);
    if (next == std::string_view::npos) {
      parts.emplace_back(text.substr(pos));
      return parts;
    }
    parts.emplace_back(text.substr(pos, next - pos));
    pos = next + 1;
  }
}

std::vector<int> parse_int_list(std::string_view text, const std::string& what) {
  std::vector<int> out;
  for (const std::string& p : split(text, ',')) out.push_back(to_int(p, what));
  return out;
}

ShiftPair parse_pair(const std::string& text) {
  std::vector<int> v = parse_int_list(text, "--pair");
  if (v.size() != 2) throw ArgumentError("--pair needs exactly two elements I,J");
  return ShiftPair(v[0], v[1]);
}

ElementSet parse_set(int n, std::string_view text, const std::string& what) {
  ElementSet s(n);
  if (text == "-") return s;
  for (int e : parse_int_list(text, what)) {
    if (e < 1 || e > n)
      throw ArgumentError(what + " holds an element outside the ground set: " +
                          std::to_string(e));
    s = s.with(e);
  }
  return s;
}

// Ground sizes for verify: "6", "5,6,7", or "5..7".
std::vector<int> parse_ns(const std::string& text) {
  std::size_t dots = text.find("..");
  if (dots != std::string::npos) {
    int lo = to_int(std::string_view(text).substr(0, dots), "--n");
    int hi = to_int(std::string_view(text).substr(dots + 2), "--n");
    if (lo > hi) throw ArgumentError("--n range is reversed");
    std::vector<int> out;
    for (int v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  return parse_int_list(text, "--n");
}

std::string set_text(const ElementSet& s) {
  if (s.empty()) return "-";
  std::string out;
  for (int e : s.elements()) {
    if (!out.empty()) out += ',';
    out += std::to_string(e);
  }
  return out;
}

std::string sets_text(const std::vector<ElementSet>& sets) {
  if (sets.empty()) return "(none)";
  std::string out;
  for (const ElementSet& s : sets) {
    if (!out.empty()) out += ' ';
    out += '{' + set_text(s) + '}';
  }
  return out;
}

ConditionParams params_from(const ParsedArgs& a) {
  return ConditionParams(int_flag(a, "--d"), int_flag(a, "--s"), int_flag_or(a, "--t", 1));
}

SearchOptions search_options_from(const ParsedArgs& a) {
  SearchOptions opts;
  opts.threads = int_flag_or(a, "--threads", 0);
  if (auto path = str_flag(a, "--checkpoint")) opts.checkpoint_path = *path;
  opts.checkpoint_every_nodes = static_cast<std::uint64_t>(
      int_flag_or(a, "--checkpoint-every", static_cast<int>(opts.checkpoint_every_nodes)));
  opts.collect_cap =
      static_cast<std::size_t>(int_flag_or(a, "--collect-cap", static_cast<int>(opts.collect_cap)));
  opts.canonical_limit = int_flag_or(a, "--canonical-limit", opts.canonical_limit);
  opts.node_budget = static_cast<std::uint64_t>(int_flag_or(a, "--node-budget", 0));
  return opts;
}

int cmd_check(const std::vector<std::string>& args, std::ostream& out) {
  ParsedArgs a = parse_args(args, 1, {"--d", "--s", "--t", "--pair", "--output"}, {});
  if (a.positional.size() != 1) throw ArgumentError("check needs exactly one family file");
  SetFamily f = read_family_file(a.positional[0]);
  ConditionParams p = params_from(a);

  out << "family: n=" << f.ground_size() << ", " << f.size() << " members\n";
  std::optional<ClusterWitness> w = find_violating_cluster(f, p);
  out << "condition (d=" << p.d << ", s=" << p.s << ", t=" << p.t << "): ";
  if (w) {
    out << "violated\n";
    out << "violating tuple: " << sets_text(w->sets) << " with union " << w->union_size
        << ", intersection " << w->intersection_size << "\n";
  } else {
    out << "holds\n";
  }

  if (auto pair_text = str_flag(a, "--pair")) {
    ShiftPair pair = parse_pair(*pair_text);
    if (w) {
      out << "pair (" << pair.i << "," << pair.j
          << "): not checked; the condition already fails\n";
    } else {
      std::optional<UnstableWitness> uw = is_ij_unstable(f, pair, p);
      if (uw) {
        out << "pair (" << pair.i << "," << pair.j
            << "): unstable; witness: " << sets_text(uw->subfamily) << "\n";
      } else {
        out << "pair (" << pair.i << "," << pair.j
            << "): shifted family still meets the condition\n";
      }
    }
  }
  return w ? 1 : 0;
}

int cmd_construct(const std::vector<std::string>& args, std::ostream& out) {
  if (args.size() < 2) throw ArgumentError("construct needs a family name");
  const std::string& name = args[1];
  ParsedArgs a = parse_args(
      args, 2,
      {"--n", "--k", "--center", "--t", "--j", "--x", "--y", "--assign", "--b", "--b1",
       "--b2", "--parts", "--thresholds", "--output"},
      {});
  if (!a.positional.empty())
    throw ArgumentError("construct takes no positional arguments after the name");

  SetFamily family(1);
  if (name == "star") {
    family = star(int_flag(a, "--n"), int_flag(a, "--k"), int_flag(a, "--center"));
  } else if (name == "hk") {
    family = h_k(int_flag(a, "--n"), int_flag(a, "--k"));
  } else if (name == "gr") {
    const int n = int_flag(a, "--n");
    auto parts_text = str_flag(a, "--parts");
    auto thresh_text = str_flag(a, "--thresholds");
    if (!parts_text || !thresh_text)
      throw ArgumentError("gr needs --parts A|B|... and --thresholds T1,T2,...");
    std::vector<ElementSet> parts;
    for (const std::string& p : split(*parts_text, '|'))
      parts.push_back(parse_set(n, p, "--parts"));
    std::vector<int> thresholds = parse_int_list(*thresh_text, "--thresholds");
    family = g_r(n, int_flag(a, "--k"), PartitionSpec(std::move(parts), std::move(thresholds)));
  } else if (name == "fj") {
    family = f_j(int_flag(a, "--n"), int_flag(a, "--k"), int_flag(a, "--t"),
                 int_flag(a, "--j"));
  } else if (name == "fprime") {
    family = f_prime(int_flag(a, "--n"), int_flag(a, "--k"), int_flag(a, "--t"));
  } else if (name == "twin2star") {
    auto assign_text = str_flag(a, "--assign");
    if (!assign_text) throw ArgumentError("twin2star needs --assign Z:C,Z:C,...");
    std::map<int, int> assignment;
    for (const std::string& item : split(*assign_text, ',')) {
      std::vector<std::string> kv = split(item, ':');
      if (kv.size() != 2) throw ArgumentError("malformed --assign entry: '" + item + "'");
      assignment[to_int(kv[0], "--assign")] = to_int(kv[1], "--assign");
    }
    family = twin_2_star(int_flag(a, "--n"), int_flag(a, "--x"), int_flag(a, "--y"),
                         assignment);
  } else if (name == "conj41") {
    const int n = int_flag(a, "--n");
    auto b_text = str_flag(a, "--b");
    if (!b_text) throw ArgumentError("conj41 needs --b E1,E2,...");
    family = conjecture41_family(n, int_flag(a, "--k"), int_flag(a, "--x"),
                                 parse_set(n, *b_text, "--b"));
  } else if (name == "g4") {
    const int n = int_flag(a, "--n");
    auto b1_text = str_flag(a, "--b1");
    auto b2_text = str_flag(a, "--b2");
    if (!b1_text || !b2_text) throw ArgumentError("g4 needs --b1 and --b2");
    family = section4_g_family(n, int_flag(a, "--k"), parse_set(n, *b1_text, "--b1"),
                               parse_set(n, *b2_text, "--b2"), int_flag(a, "--x"),
                               int_flag(a, "--y"));
  } else {
    throw ArgumentError(
        "unknown construction '" + name +
        "'; expected one of star, hk, gr, fj, fprime, twin2star, conj41, g4");
  }
  out << to_text(family);
  return 0;
}

int cmd_search(const std::vector<std::string>& args, std::ostream& out) {
  ParsedArgs a = parse_args(args, 1,
                            {"--n", "--pool", "--d", "--s", "--t", "--max-size",
                             "--vertex-cap", "--format", "--output", "--threads",
                             "--checkpoint", "--checkpoint-every", "--node-budget",
                             "--collect-cap", "--canonical-limit"},
                            {"--stable", "--nonintersecting"});
  if (!a.positional.empty()) throw ArgumentError("search takes flags only");
  auto pool_text = str_flag(a, "--pool");
  if (!pool_text) throw ArgumentError("missing required flag: --pool");

  int n = int_flag_or(a, "--n", 0);
  std::vector<ElementSet> pool;
  if (pool_text->rfind("level:", 0) == 0) {
    if (n == 0) throw ArgumentError("missing required flag: --n");
    pool = level_sets(n, to_int(pool_text->substr(6), "--pool level:K"));
  } else if (pool_text->rfind("upto:", 0) == 0) {
    if (n == 0) throw ArgumentError("missing required flag: --n");
    pool = SetFamily::up_to_size(n, to_int(pool_text->substr(5), "--pool upto:U")).members();
  } else if (*pool_text == "power") {
    if (n == 0) throw ArgumentError("missing required flag: --n");
    pool = SetFamily::power_set(n).members();
  } else if (pool_text->rfind("file:", 0) == 0) {
    SetFamily f = read_family_file(pool_text->substr(5));
    if (n != 0 && n != f.ground_size())
      throw ArgumentError("--n disagrees with the pool file's ground size");
    n = f.ground_size();
    pool = f.members();
  } else {
    throw ArgumentError("malformed --pool '" + *pool_text +
                        "'; expected level:K, upto:U, power, or file:PATH");
  }

  SearchConstraints cons;
  cons.require_stable = a.flags.count("--stable") > 0;
  cons.require_nonintersecting = a.flags.count("--nonintersecting") > 0;
  if (a.flags.count("--max-size")) cons.max_member_size = int_flag(a, "--max-size");

  ConflictStructure cs = build_conflicts(n, pool, params_from(a),
                                         int_flag_or(a, "--vertex-cap", kDefaultVertexCap));
  SearchReport rep = max_family(cs, cons, search_options_from(a));
  rep.label = "search " + *pool_text;

  const std::string format = str_flag(a, "--format").value_or("text");
  if (format == "json")
    out << report_to_json(rep) << "\n";
  else if (format == "text")
    out << report_to_text(rep);
  else
    throw ArgumentError("unknown --format '" + format + "'; expected text or json");
  return 0;
}

int cmd_verify(const std::vector<std::string>& args, std::ostream& out) {
  if (args.size() < 2) throw ArgumentError("verify needs a theorem name");
  ParsedArgs a = parse_args(args, 2,
                            {"--n", "--k", "--d", "--s", "--u", "--vertex-cap",
                             "--format", "--output", "--threads", "--checkpoint",
                             "--checkpoint-every", "--node-budget", "--collect-cap",
                             "--canonical-limit"},
                            {});
  if (!a.positional.empty()) throw ArgumentError("verify takes flags only after the name");
  auto ns_text = str_flag(a, "--n");
  if (!ns_text) throw ArgumentError("missing required flag: --n");

  VerifyRequest req;
  req.theorem = args[1];
  req.ns = parse_ns(*ns_text);
  req.k = int_flag_or(a, "--k", 0);
  req.d = int_flag_or(a, "--d", 0);
  req.s = int_flag_or(a, "--s", 0);
  req.u = int_flag_or(a, "--u", 0);
  req.vertex_cap = int_flag_or(a, "--vertex-cap", kDefaultVertexCap);
  req.options = search_options_from(a);

  std::vector<SearchReport> reports = verify_theorem(req);

  const std::string format = str_flag(a, "--format").value_or("text");
  if (format == "json") {
    out << "[\n";
    for (std::size_t i = 0; i < reports.size(); ++i)
      out << report_to_json(reports[i]) << (i + 1 < reports.size() ? ",\n" : "\n");
    out << "]\n";
  } else if (format == "text") {
    for (std::size_t i = 0; i < reports.size(); ++i) {
      if (i > 0) out << "\n";
      out << report_to_text(reports[i]);
    }
  } else {
    throw ArgumentError("unknown --format '" + format + "'; expected text or json");
  }

  for (const SearchReport& r : reports)
    if (r.verdict.rfind("FAIL", 0) == 0) return 1;
  return 0;
}

int cmd_duality(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  ParsedArgs a = parse_args(args, 1, {"--pair", "--d", "--s", "--t", "--output"}, {});
  if (a.positional.size() != 1) throw ArgumentError("duality needs exactly one family file");
  auto pair_text = str_flag(a, "--pair");
  if (!pair_text) throw ArgumentError("missing required flag: --pair");
  ShiftPair pair = parse_pair(*pair_text);
  ConditionParams params = params_from(a);
  SetFamily f = read_family_file(a.positional[0]);

  if (!is_conditionally_intersecting(f, params)) {
    err << "no witness: the family itself violates the condition\n";
    return 1;
  }
  std::optional<UnstableWitness> w = is_ij_unstable(f, pair, params);
  if (!w) {
    err << "no witness: the (" << pair.i << "," << pair.j
        << ")-shifted family still meets the condition\n";
    return 1;
  }

  std::optional<DualityTrace> trace;
  try {
    trace = duality_forward(w->subfamily, f, pair, params);
  } catch (const CapabilityError& e) {
    err << "witness found but the map is undefined on it: " << e.what() << "\n";
    return 1;
  }
  const DualityTrace& tr = *trace;

  out << "family: n=" << f.ground_size() << ", " << f.size() << " members\n";
  out << "condition (d=" << params.d << ", s=" << params.s << ", t=" << params.t
      << "), pair (" << pair.i << "," << pair.j << ")\n";
  out << "witness:                 " << sets_text(tr.input) << "\n";
  out << "  moved by the shift:    " << sets_text(tr.partition.moved) << "\n";
  out << "  holding " << pair.i << ":             " << sets_text(tr.partition.with_i)
      << "\n";
  out << "  avoiding both:         " << sets_text(tr.partition.avoiding_both) << "\n";
  out << "reverse-blocked members: " << sets_text(tr.reverse_fixed) << "\n";
  out << "  their swaps:           " << sets_text(tr.reverse_fixed_swapped) << "\n";
  out << "output witness (" << pair.j << "," << pair.i << "):  " << sets_text(tr.output)
      << "\n";
  out << "  forward-blocked:       " << sets_text(tr.output_fixed) << "\n";
  out << "  their swaps:           " << sets_text(tr.output_fixed_swapped) << "\n";

  const bool ok = duality_inverse(tr, f) == tr.input;
  out << "round trip: " << (ok ? "OK" : "MISMATCH") << "\n";
  return ok ? 0 : 1;
}

int cmd_stabilize(const std::vector<std::string>& args, std::ostream& out) {
  ParsedArgs a = parse_args(args, 1, {"--output"}, {});
  if (a.positional.size() != 1) throw ArgumentError("stabilize needs exactly one family file");
  StabilizeResult r = stabilize(read_family_file(a.positional[0]));
  out << to_text(r.family);
  out << "# shifts applied: " << r.shifts.size() << "\n";
  for (const ShiftPair& p : r.shifts)
    out << "# shift (" << p.i << "," << p.j << ")\n";
  return 0;
}

int cmd_shadow(const std::vector<std::string>& args, std::ostream& out) {
  ParsedArgs a = parse_args(args, 1, {"--ell", "--katona-t", "--output"}, {});
  if (a.positional.size() != 1) throw ArgumentError("shadow needs exactly one family file");
  SetFamily f = read_family_file(a.positional[0]);
  const int ell = int_flag(a, "--ell");
  SetFamily sh = shadow(f, ell);
  out << to_text(sh);
  if (a.flags.count("--katona-t")) {
    KatonaCheck kc = katona_bound_check(f, int_flag(a, "--katona-t"), ell);
    out << "# shadow bound: |shadow| = " << kc.lhs << " vs " << kc.rhs.num << "/"
        << kc.rhs.den << "; "
        << (kc.holds ? (kc.equality ? "equality" : "holds strictly") : "VIOLATED") << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.empty() || args[0] == "--help" || args[0] == "help") {
    (args.empty() ? err : out) << kUsage;
    return args.empty() ? 2 : 0;
  }
  const std::string& command = args[0];
  try {
    std::ostringstream buf;
    int code;
    if (command == "check")
      code = cmd_check(args, buf);
    else if (command == "construct")
      code = cmd_construct(args, buf);
    else if (command == "search")
      code = cmd_search(args, buf);
    else if (command == "verify")
      code = cmd_verify(args, buf);
    else if (command == "duality")
      code = cmd_duality(args, buf, err);
    else if (command == "stabilize")
      code = cmd_stabilize(args, buf);
    else if (command == "shadow")
      code = cmd_shadow(args, buf);
    else {
      err << "unknown command '" << command << "'\n" << kUsage;
      return 2;
    }

    // route the report to --output when present
    std::optional<std::string> output;
    for (std::size_t i = 1; i + 1 < args.size(); ++i)
      if (args[i] == "--output") output = args[i + 1];
    if (output) {
      std::ofstream file(*output, std::ios::binary);
      if (!file) throw ArgumentError("cannot open output file: " + *output);
      file << buf.str();
    } else {
      out << buf.str();
    }
    return code;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const CapabilityError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace setlab
