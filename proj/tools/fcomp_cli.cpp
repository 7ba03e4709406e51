// fcomp command-line front end.
//
// Exit codes: 0 success, 1 usage error, 2 instance/invariant error,
// 3 codec precondition failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fcomp/fcomp.hpp"

namespace {

using fcomp::json;

constexpr int kExitUsage = 1;
constexpr int kExitInstance = 2;
constexpr int kExitPrecondition = 3;

const char* kCsvHelp =
    "CSV columns:\n"
    "  curve:    eps_lo,eps_hi,rate   (one row per constant interval; last eps_hi is inf)\n"
    "  simulate: codec,blocklength,blocks,theoretical_rate,empirical_rate,n,violations,p_avg\n";

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

// "1/15,4/15,0.5" -> {0.0667, 0.2667, 0.5}
std::vector<double> parse_pmf(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto slash = item.find('/');
    try {
      if (slash == std::string::npos)
        out.push_back(std::stod(item));
      else
        out.push_back(std::stod(item.substr(0, slash)) / std::stod(item.substr(slash + 1)));
    } catch (const std::exception&) {
      throw std::invalid_argument("cannot parse pmf entry \"" + item + "\"");
    }
  }
  return out;
}

struct Options {
  std::string instance;
  double epsilon = -1.0;
  std::size_t blocklength = 100000;
  std::size_t blocks = 1;
  std::uint64_t seed = 1;
  double rate = -1.0;
  std::string px;
  std::size_t samples = 10000;
  std::string out;
  std::string design_out;
  std::string format = "json";
  std::string codec = "modular";
  std::string fixture;
  double lipschitz = -1.0;
  double delta = -1.0;
  std::string dir = "fixtures";
};

fcomp::ProblemInstance load(const Options& o) {
  auto inst = fcomp::load_instance(o.instance);
  if (o.epsilon >= 0.0) inst.epsilon = o.epsilon;
  if (!o.px.empty()) inst = fcomp::with_source_pmf(inst, parse_pmf(o.px));
  return inst;
}

void cmd_hypergraph(const Options& o) {
  const auto g = fcomp::build_hypergraph(load(o));
  emit(fcomp::hypergraph_to_json(g).dump(2) + "\n", o.out);
}

void cmd_entropy(const Options& o) {
  const auto inst = load(o);
  const auto sol = fcomp::functional_entropy(inst);
  emit(fcomp::solution_to_json(sol).dump(2) + "\n", o.out);
}

void cmd_curve(const Options& o) {
  const auto curve = fcomp::rate_curve(load(o));
  emit(o.format == "csv" ? curve.to_csv() : fcomp::rate_curve_to_json(curve).dump(2) + "\n", o.out);
}

void cmd_bounds(const Options& o) {
  const auto inst = load(o);
  if (o.epsilon < 0.0) throw std::invalid_argument("bounds: --epsilon is required");
  json j{{"epsilon", o.epsilon}};
  if (o.lipschitz > 0.0) {
    if (inst.ny != 1) throw fcomp::InstanceError("lipschitz bound: instance must have ny = 1 (f holds the embedding of X)");
    std::vector<fcomp::Point> positions;
    for (std::size_t x = 0; x < inst.nx; ++x) positions.push_back(inst.f[x][0]);
    j["lipschitz"] = o.lipschitz;
    j["bound"] = fcomp::lipschitz_bound(fcomp::Distribution{inst.marginal_x()}, positions, o.lipschitz, o.epsilon);
  } else if (o.delta >= 0.0) {
    j["delta"] = o.delta;
    j["bound"] = fcomp::approx_function_bound(inst, o.delta, o.epsilon);
  } else {
    throw std::invalid_argument("bounds: give --lipschitz or --delta");
  }
  emit(j.dump(2) + "\n", "");
}

void cmd_encode_modular(const Options& o) {
  const auto inst = load(o);
  const fcomp::ModularCodec codec(inst);
  fcomp::Rng rng(fcomp::mix_seed(o.seed, 0));
  std::vector<std::size_t> xs, ys;
  fcomp::draw_pairs(inst, o.blocklength, rng, xs, ys);
  const auto block = codec.encode(xs);
  const auto z = codec.decode(block, ys);
  const auto report = fcomp::p_avg(inst, xs, ys, z);
  if (!o.out.empty()) {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + o.out);
    fcomp::write_block(f, block);
  }
  json j{{"n", block.n},       {"alphabet_size", block.alphabet_size}, {"bits", block.bit_count},
         {"rate", block.rate()}, {"violations", report.violations},     {"p_avg", report.p_avg}};
  std::cout << j.dump(2) << "\n";
}

void cmd_encode_polar(const Options& o) {
  const auto inst = load(o);
  const auto sol = fcomp::functional_entropy(inst);
  const auto src = fcomp::binary_source_from(inst, sol);
  const double rate = o.rate > 0.0 ? o.rate : std::min(1.0, src.mutual_information() + 0.1);
  const fcomp::PolarCodec codec(inst, sol, fcomp::exact_log2(o.blocklength), rate, o.samples,
                                fcomp::mix_seed(o.seed, 0xDE5160ULL));
  fcomp::Rng rng(fcomp::mix_seed(o.seed, 0));
  std::vector<std::size_t> xs, ys;
  fcomp::draw_pairs(inst, o.blocklength, rng, xs, ys);
  const auto cw = codec.encode(xs, fcomp::mix_seed(o.seed, 0xE4C0DEULL));
  const auto w_hat = codec.decode(cw.info_bits);
  const std::size_t bad = codec.distortion_count(xs, ys, w_hat);
  if (!o.out.empty()) {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + o.out);
    fcomp::write_block(f, fcomp::pack_bits(cw.info_bits, o.blocklength));
  }
  if (!o.design_out.empty()) emit(fcomp::design_to_json(codec.design()).dump(2) + "\n", o.design_out);
  json j{{"n", o.blocklength},
         {"info_bits", cw.info_bits.size()},
         {"rate", codec.design().rate()},
         {"mutual_information", src.mutual_information()},
         {"violations", bad},
         {"p_avg", static_cast<double>(bad) / static_cast<double>(o.blocklength)}};
  std::cout << j.dump(2) << "\n";
}

void cmd_simulate(const Options& o) {
  fcomp::SimConfig cfg;
  cfg.instance_path = o.instance;
  cfg.command = o.codec;
  cfg.blocklength = o.blocklength;
  cfg.blocks = o.blocks;
  cfg.seed = o.seed;
  if (o.epsilon >= 0.0) cfg.epsilon = o.epsilon;
  if (o.rate > 0.0) cfg.target_rate = o.rate;
  if (!o.px.empty()) cfg.px_override = parse_pmf(o.px);
  cfg.design_samples = o.samples;
  cfg.format = o.format;
  const auto result = fcomp::simulate(cfg);
  emit(fcomp::format_sim_result(result, o.format), o.out);
  std::cerr << "runtime_ms " << result.runtime_ms << "\n";
}

void cmd_reproduce(const Options& o) { emit(fcomp::reproduce_reference(o.fixture, o.seed), o.out); }

void cmd_write_fixtures(const Options& o) {
  namespace fx = fcomp::fixtures;
  fcomp::save_instance(fx::example1(), o.dir + "/example1.json");
  fcomp::save_instance(fx::example2(), o.dir + "/example2.json");
  fcomp::save_instance(fx::fig4_row(0), o.dir + "/fig4.json");
  fcomp::save_instance(fx::fig5(), o.dir + "/fig5.json");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fcomp: functional compression under a maximal distortion constraint"};
  app.footer(kCsvHelp);
  app.require_subcommand(1);
  Options o;

  auto instance_opts = [&](CLI::App* sub, bool required = true) {
    auto* opt = sub->add_option("--instance", o.instance, "instance JSON file");
    if (required) opt->required();
    sub->add_option("--epsilon", o.epsilon, "override the fidelity epsilon");
    sub->add_option("--px", o.px, "override the source pmf, e.g. 1/15,4/15,8/15,2/15");
  };

  auto* hg = app.add_subcommand("hypergraph", "maximal hyperedges as JSON");
  instance_opts(hg);
  hg->add_option("--out", o.out, "output file (default stdout)");

  auto* en = app.add_subcommand("entropy", "functional epsilon-entropy and the optimal channel as JSON");
  instance_opts(en);
  en->add_option("--out", o.out, "output file (default stdout)");

  auto* cu = app.add_subcommand("curve", "rate curve R(epsilon) as CSV or JSON");
  instance_opts(cu);
  cu->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cu->add_option("--out", o.out, "output file (default stdout)");

  auto* bo = app.add_subcommand("bounds", "Lipschitz or delta-approximation upper bound on R(epsilon)");
  instance_opts(bo);
  bo->add_option("--lipschitz", o.lipschitz, "Lipschitz constant L (f of the instance embeds X)");
  bo->add_option("--delta", o.delta, "approximation accuracy delta (instance holds the surrogate)");

  auto* em = app.add_subcommand("encode-modular", "quantize + LZW one random block");
  instance_opts(em);
  em->add_option("--blocklength", o.blocklength, "source blocklength");
  em->add_option("--seed", o.seed, "64-bit seed");
  em->add_option("--out", o.out, "encoded block file");

  auto* ep = app.add_subcommand("encode-polar", "randomized quantization + polar coding of one random block");
  instance_opts(ep);
  ep->add_option("--blocklength", o.blocklength, "blocklength (power of two)");
  ep->add_option("--seed", o.seed, "64-bit seed");
  ep->add_option("--rate", o.rate, "target rate (default I(W;X) + 0.1)");
  ep->add_option("--samples", o.samples, "Monte-Carlo samples for the design");
  ep->add_option("--out", o.out, "coded block file");
  ep->add_option("--design", o.design_out, "design JSON file");

  auto* si = app.add_subcommand("simulate", "end-to-end i.i.d. simulation");
  instance_opts(si);
  si->add_option("--codec", o.codec, "modular or polar")->check(CLI::IsMember({"modular", "polar"}));
  si->add_option("--blocklength", o.blocklength, "blocklength N");
  si->add_option("--blocks", o.blocks, "number of blocks");
  si->add_option("--seed", o.seed, "64-bit seed");
  si->add_option("--rate", o.rate, "polar target rate");
  si->add_option("--samples", o.samples, "polar design Monte-Carlo samples");
  si->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"csv", "json"}));
  si->add_option("--out", o.out, "output file (default stdout)");

  auto* re = app.add_subcommand("reproduce", "compare a worked instance against its reference values");
  re->add_option("--fixture", o.fixture, "example1 | example2 | fig4 | fig5")->required();
  re->add_option("--seed", o.seed, "64-bit seed");
  re->add_option("--out", o.out, "report file (default stdout)");

  auto* wf = app.add_subcommand("write-fixtures", "write the canonical instance files");
  wf->add_option("--dir", o.dir, "target directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*hg) cmd_hypergraph(o);
    else if (*en) cmd_entropy(o);
    else if (*cu) cmd_curve(o);
    else if (*bo) cmd_bounds(o);
    else if (*em) cmd_encode_modular(o);
    else if (*ep) cmd_encode_polar(o);
    else if (*si) cmd_simulate(o);
    else if (*re) cmd_reproduce(o);
    else if (*wf) cmd_write_fixtures(o);
  } catch (const fcomp::InstanceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInstance;
  } catch (const fcomp::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInstance;
  }
  return 0;
}
