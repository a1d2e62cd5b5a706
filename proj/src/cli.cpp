#include "qmk/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "qmk/blockcode.hpp"
#include "qmk/cluster.hpp"
#include "qmk/contfrac.hpp"
#include "qmk/jacobiperron.hpp"
#include "qmk/ktheory.hpp"
#include "qmk/minkowski.hpp"

namespace qmk::cli {

using nlohmann::json;

namespace {

struct Input {
  std::optional<ExactNumber> exact;
  ContinuedFraction cf;
};

// "p/q", "sqrt(2)-1", "[0; (2)]" or "stream:e" (e - 2, declared aperiodic).
Input read_input(const std::string& text) {
  Input in;
  if (text == "stream:e") {
    in.cf = ContinuedFraction::stream(0, euler_digits());
    return in;
  }
  auto first = text.find_first_not_of(' ');
  if (first != std::string::npos && text[first] == '[') {
    in.cf = ContinuedFraction::parse(text);
    in.exact = cf_value(in.cf);
    return in;
  }
  in.exact = parse_exact(text);
  in.cf = cf_expand(*in.exact);
  return in;
}

json strings(const std::vector<Integer>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

json strings(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.to_string());
  return a;
}

json bits_json(const Block& b) {
  json a = json::array();
  for (auto x : b) a.push_back(static_cast<int>(x));
  return a;
}

json group_json(const AbelianGroupPresentation& g) {
  json j;
  j["free_rank"] = g.free_rank;
  j["invariant_factors"] = strings(g.invariant_factors);
  j["group"] = g.to_string();
  return j;
}

json blocks_json(const BlockSequence& seq) {
  json j;
  j["surface"] = {{"g", seq.surface.g}, {"n", seq.surface.n}, {"m", seq.surface.m()}};
  j["L"] = seq.surface.length();
  j["s"] = seq.surface.slots();
  json blocks = json::array();
  for (const auto& b : seq.blocks) blocks.push_back(bits_json(b));
  j["blocks"] = blocks;
  j["tail"] = to_string(seq.tail);
  j["certified"] = seq.certified;
  if (seq.tail == BlockTail::Periodic) {
    j["preperiod"] = seq.preperiod;
    j["shortest_preperiod"] = seq.shortest_preperiod;
    json period = json::array();
    for (const auto& b : seq.period) period.push_back(bits_json(b));
    j["period"] = period;
    j["period_length"] = seq.period.size();
  }
  if (seq.tail == BlockTail::AperiodicAtHorizon || seq.tail == BlockTail::Unknown) j["horizon"] = seq.horizon;
  return j;
}

std::vector<std::size_t> parse_counts(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t pos = 0;
    long v = std::stol(tok, &pos);
    if (v < 0) throw std::invalid_argument("expected non-negative integers, got \"" + text + "\"");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

Integer json_integer(const json& v) {
  if (v.is_number_integer()) return Integer(v.dump());
  if (v.is_string()) return Integer(v.get<std::string>(), 10);
  throw std::invalid_argument("matrix entries must be integers");
}

IntegerMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a non-empty array of rows");
  std::vector<std::vector<Integer>> rows;
  for (const auto& row : j) {
    if (!row.is_array()) throw std::invalid_argument("matrix rows must be arrays");
    std::vector<Integer> r;
    for (const auto& v : row) r.push_back(json_integer(v));
    rows.push_back(std::move(r));
  }
  return IntegerMatrix::from_rows(rows);
}

json approx(double v) { return json{{"value", v}, {"note", "double precision approximation"}}; }

BlockSequence encode_any(const std::string& x, const SurfaceData& surface, std::size_t count, std::size_t steps,
                         const std::string& declared) {
  if (surface.m() == 1) {
    Input in = read_input(x);
    return detect_block_period(encode_blocks(in.cf, surface, count), count);
  }
  JPExpansion exp = jp_expand(parse_real_vector(x), steps);
  std::optional<JpPeriodDeclaration> decl;
  if (!declared.empty()) {
    auto v = parse_counts(declared);
    if (v.size() != 2) throw std::invalid_argument("--declared-period expects pre,period");
    decl = JpPeriodDeclaration{v[0], v[1]};
  }
  BlockSequence seq = encode_blocks(exp, surface, count, decl);
  return seq;
}

}  // namespace

Result run(const std::vector<std::string>& args) {
  Result result;
  std::ostringstream out, err;
  CLI::App app{"Exact question-mark, continued fraction, K-theory and cluster toolkit", "qmark"};
  app.require_subcommand(1);

  std::string x, surface_text = "1,1", file, b_text, path_text, declared;
  std::size_t count = 17, terms = 32, steps = 20, trunc = 8, depth = 4, budget = 0, rank = 0;
  bool csv = false, json_flag = false, as_cokernel = false;

  auto* qm = app.add_subcommand("qm", "Minkowski question-mark function");
  qm->require_subcommand(1);
  auto* qm_eval = qm->add_subcommand("eval", "?(x) for x in [0, 1]");
  qm_eval->add_option("x", x, "rational, surd, [a0; a1, (p)] or stream:e")->required();
  qm_eval->add_option("--terms", terms, "series terms for streamed input");
  auto* qm_inv = qm->add_subcommand("inv", "inverse ?(y) for rational y in [0, 1]");
  qm_inv->add_option("y", x)->required();
  auto* qm_classify = qm->add_subcommand("classify", "arithmetic type of x and ?(x)");
  qm_classify->add_option("x", x)->required();
  qm_classify->add_option("--horizon", terms, "digits inspected for streams");
  auto* qm_sample = qm->add_subcommand("sample", "CSV of ?(i/(N-1)), sorted by x");
  qm_sample->add_option("--count", count);
  qm_sample->add_flag("--csv", csv);

  auto* sample = app.add_subcommand("sample", "CSV of ?(i/(N-1)), sorted by x");
  sample->add_option("--count", count);
  sample->add_flag("--csv", csv);

  auto* cf = app.add_subcommand("cf", "regular continued fractions");
  cf->require_subcommand(1);
  auto* cf_expand_cmd = cf->add_subcommand("expand", "expansion and convergents");
  cf_expand_cmd->add_option("x", x)->required();
  cf_expand_cmd->add_option("--terms", terms, "number of convergents");
  auto* cf_value_cmd = cf->add_subcommand("value", "exact value of [a0; a1, (p1, p2)]");
  cf_value_cmd->add_option("cf", x)->required();

  auto* jp = app.add_subcommand("jp", "Jacobi-Perron expansions");
  jp->require_subcommand(1);
  auto* jp_expand_cmd = jp->add_subcommand("expand", "digits and convergents of a vector");
  jp_expand_cmd->add_option("theta", x, "comma-separated coordinates in [0, 1)")->required();
  jp_expand_cmd->add_option("--steps", steps);
  jp_expand_cmd->add_flag("--json", json_flag);

  auto* blocks = app.add_subcommand("blocks", "block sequences");
  blocks->require_subcommand(1);
  auto* blocks_encode = blocks->add_subcommand("encode", "encode digits as blocks");
  blocks_encode->add_option("x", x, "number (m = 1) or comma-separated vector")->required();
  blocks_encode->add_option("--surface", surface_text, "g,n");
  blocks_encode->add_option("--count", count);
  blocks_encode->add_option("--steps", steps, "Jacobi-Perron steps for m > 1");
  blocks_encode->add_option("--declared-period", declared, "pre,period in digit vectors (m > 1)");
  blocks_encode->add_flag("--json", json_flag);

  auto* k0 = app.add_subcommand("k0", "K0 groups");
  k0->require_subcommand(1);
  auto* k0_matrix = k0->add_subcommand("matrix", "K0 of a 0/1 matrix, or a cokernel");
  k0_matrix->add_option("--file", file, "JSON array of rows")->required();
  k0_matrix->add_flag("--cokernel", as_cokernel, "cokernel of the matrix itself");
  auto* k0_blocks_cmd = k0->add_subcommand("blocks", "truncated K0 of the block sequence of x");
  k0_blocks_cmd->add_option("x", x)->required();
  k0_blocks_cmd->add_option("--surface", surface_text, "g,n");
  k0_blocks_cmd->add_option("--trunc", trunc, "blocks used");

  auto* cluster = app.add_subcommand("cluster", "cluster seed mutation");
  cluster->require_subcommand(1);
  auto* cl_mutate = cluster->add_subcommand("mutate", "mutate along a path");
  cl_mutate->add_option("--rank", rank)->required();
  cl_mutate->add_option("--b", b_text, "exchange matrix as JSON")->required();
  cl_mutate->add_option("--path", path_text, "directions, e.g. 1,2,1");
  auto* cl_orbit = cluster->add_subcommand("orbit", "cluster variables up to a depth");
  cl_orbit->add_option("--rank", rank)->required();
  cl_orbit->add_option("--b", b_text)->required();
  cl_orbit->add_option("--depth", depth);
  cl_orbit->add_option("--budget", budget, "maximum seeds, 0 = unlimited");

  auto* classify_cmd = app.add_subcommand("classify", "correspondence report");
  classify_cmd->add_option("x", x)->required();
  classify_cmd->add_option("--surface", surface_text, "g,n");
  classify_cmd->add_option("--count", count, "blocks inspected");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    json j;
    std::string csv_out;

    if (qm_eval->parsed()) {
      j["command"] = "qm eval";
      Input in = read_input(x);
      j["input"] = x;
      if (in.exact) {
        Rational y = question_mark_exact(*in.exact);
        j["value"] = y.to_string();
        j["dyadic"] = is_dyadic(y);
        j["binary"] = question_mark_binary(in.cf).to_string();
        j["approx"] = approx(y.to_double());
      } else {
        DyadicInterval iv = question_mark_series(in.cf, terms);
        j["lower"] = iv.lower.to_string();
        j["upper"] = iv.upper.to_string();
        j["width"] = iv.width().to_string();
        j["terms"] = terms;
      }
    } else if (qm_inv->parsed()) {
      j["command"] = "qm inv";
      j["input"] = x;
      ExactNumber v = inverse_question_mark(parse_rational(x));
      j["value"] = v.to_string();
      j["cf"] = cf_expand(v).to_string();
      j["approx"] = approx(v.to_double());
    } else if (qm_classify->parsed()) {
      j["command"] = "qm classify";
      j["input"] = x;
      Input in = read_input(x);
      Classification c = in.exact ? classify(*in.exact) : classify(in.cf, terms);
      j["domain"] = to_string(c.domain);
      j["image"] = to_string(c.image);
      j["verified"] = c.verified;
      if (c.image_value) j["image_value"] = c.image_value->to_string();
      if (c.horizon) j["horizon"] = *c.horizon;
    } else if (qm_sample->parsed() || sample->parsed()) {
      if (count < 2) throw std::invalid_argument("--count must be at least 2");
      csv_out = "x,qm,qm_approx\n";
      for (std::size_t i = 0; i < count; ++i) {
        Rational px(Integer(static_cast<unsigned long>(i)), Integer(static_cast<unsigned long>(count - 1)));
        Rational y = question_mark_exact(px);
        std::ostringstream line;
        line.precision(17);
        line << px.to_string() << ',' << y.to_string() << ',' << y.to_double() << '\n';
        csv_out += line.str();
      }
    } else if (cf_expand_cmd->parsed()) {
      j["command"] = "cf expand";
      j["input"] = x;
      Input in = read_input(x);
      j["cf"] = in.cf.to_string();
      j["kind"] = in.cf.is_finite() ? "finite" : in.cf.is_periodic() ? "periodic" : "stream";
      j["convergents"] = strings(convergents(in.cf, terms));
      if (in.cf.is_periodic()) {
        j["preperiod"] = strings(in.cf.preperiod());
        j["period"] = strings(in.cf.period());
      }
    } else if (cf_value_cmd->parsed()) {
      j["command"] = "cf value";
      ContinuedFraction c = ContinuedFraction::parse(x);
      j["input"] = c.to_string();
      ExactNumber v = cf_value(c);
      j["value"] = v.to_string();
      j["approx"] = approx(v.to_double());
    } else if (jp_expand_cmd->parsed()) {
      j["command"] = "jp expand";
      j["input"] = x;
      JPExpansion e = jp_expand(parse_real_vector(x), steps);
      j["m"] = e.m;
      j["terminated"] = e.terminated;
      json digits = json::array(), conv = json::array();
      for (const auto& d : e.digits) digits.push_back(strings(d));
      for (std::size_t k = 1; k <= e.digits.size(); ++k) conv.push_back(strings(jp_convergent(e, k)));
      j["digits"] = digits;
      j["convergents"] = conv;
      if (e.residual) j["final_convergent"] = strings(jp_final_convergent(e));
    } else if (blocks_encode->parsed()) {
      SurfaceData s = SurfaceData::parse(surface_text);
      j = blocks_json(encode_any(x, s, count, steps, declared));
      j["command"] = "blocks encode";
      j["input"] = x;
    } else if (k0_matrix->parsed()) {
      std::ifstream f(file);
      if (!f) throw std::invalid_argument("cannot open " + file);
      IntegerMatrix m = matrix_from_json(json::parse(f));
      j["command"] = "k0 matrix";
      bool zero_one = m.is_square();
      for (std::size_t r = 0; r < m.rows() && zero_one; ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) zero_one = zero_one && (m(r, c) == 0 || m(r, c) == 1);
      if (as_cokernel || !zero_one) {
        j.update(group_json(cokernel(m)));
        j["flags"] = {{"mode", "cokernel"}};
      } else {
        CuntzKriegerK0 k = k0_cuntz_krieger(m);
        j.update(group_json(k.k0));
        j["k1_rank"] = k.k1_rank;
        j["flags"] = {{"mode", "cuntz-krieger"},
                      {"permutation", k.permutation},
                      {"irreducible", k.irreducible},
                      {"primitive", k.primitive},
                      {"hypothesis_holds", k.hypothesis_holds()}};
      }
    } else if (k0_blocks_cmd->parsed()) {
      SurfaceData s = SurfaceData::parse(surface_text);
      Input in = read_input(x);
      BlockSequence seq = encode_blocks(in.cf, s, trunc);
      K0Blocks k = k0_blocks(seq, trunc);
      j = group_json(k.group);
      j["command"] = "k0 blocks";
      j["input"] = x;
      j["blocks_used"] = k.blocks_used;
      j["block_factors"] = strings(k.block_factors);
      j["degenerate"] = k.degenerate;
      j["flags"] = {{"torsion", k.group.is_torsion()},
                    {"degenerate_blocks", std::count(k.degenerate.begin(), k.degenerate.end(), true)}};
    } else if (cl_mutate->parsed() || cl_orbit->parsed()) {
      ExchangeMatrix b = json::parse(b_text).get<ExchangeMatrix>();
      if (b.size() != rank) throw std::invalid_argument("--rank does not match the size of --b");
      ClusterSeed seed(b);
      if (cl_mutate->parsed()) {
        j["command"] = "cluster mutate";
        std::vector<std::size_t> path = path_text.empty() ? std::vector<std::size_t>{} : parse_counts(path_text);
        for (auto k : path) seed = mutate(seed, k);
        json vars = json::array(), laurent = json::array();
        for (const auto& v : seed.variables()) {
          auto l = is_laurent(v);
          vars.push_back(l ? l->to_string() : v.to_string());
          laurent.push_back(l.has_value());
        }
        j["path"] = path;
        j["variables"] = vars;
        j["laurent"] = laurent;
        j["b"] = seed.exchange_matrix();
      } else {
        j["command"] = "cluster orbit";
        MutationOrbit o = mutation_orbit(seed, depth, budget);
        json vars = json::array();
        for (const auto& v : o.variables) vars.push_back(v.to_string());
        j["variables"] = vars;
        j["count"] = o.variables.size();
        j["non_laurent"] = o.non_laurent.size();
        j["all_positive"] = o.all_positive;
        j["seeds_visited"] = o.seeds_visited;
        j["truncated"] = o.truncated;
        j["depth"] = depth;
      }
    } else if (classify_cmd->parsed()) {
      SurfaceData s = SurfaceData::parse(surface_text);
      Input in = read_input(x);
      CorrespondenceReport r = in.exact ? classification_correspondence(*in.exact, s, count)
                                        : classification_correspondence(in.cf, s, count);
      j["command"] = "classify";
      j["input"] = r.input;
      j["cf"] = r.cf.to_string();
      j["domain"] = to_string(r.domain);
      j["image"] = to_string(r.image.image);
      if (r.image.image_value) j["image_value"] = r.image.image_value->to_string();
      j["blocks"] = blocks_json(r.blocks);
      j["blocks"].erase("blocks");
      j["k0"] = group_json(r.k0.group);
      j["k0"]["blocks_used"] = r.k0.blocks_used;
      json checks = json::object();
      for (const auto& c : r.checks) checks[c.name] = c.holds;
      j["checks"] = checks;
      j["consistent"] = r.consistent();
    }

    if (!csv_out.empty()) out << csv_out;
    else out << j.dump() << '\n';
    result.exit_code = 0;
  } catch (const CLI::ParseError& e) {
    result.exit_code = app.exit(e, out, err);
    if (result.exit_code == 0 && out.str().empty()) out << app.help();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    result.exit_code = 1;
  }
  result.out = out.str();
  result.err = err.str();
  return result;
}

}  // namespace qmk::cli
