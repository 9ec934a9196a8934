// coabel: analyze kernels of maps from products of surface groups to Z^n.
//
// Exit codes: 0 success, 1 input error, 2 internal or verification failure.

#include "coabel/reproduction.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace coabel;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kFailure = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_atomic(const fs::path& path, const std::string& text) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out << text;
    if (!out.flush()) throw InputError("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw InputError(std::string("bad ") + what + " entry '" + item + "'");
    }
  }
  return out;
}

/// "1,2/3,4/5,6" -> three 0-based index blocks
std::vector<std::vector<std::size_t>> parse_blocks(const std::string& text) {
  std::vector<std::vector<std::size_t>> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, '/')) {
    std::vector<std::size_t> blk;
    for (int i : parse_int_list(part, "block"))
      blk.push_back(i >= 1 ? static_cast<std::size_t>(i - 1) : throw InputError("block indices are 1-based"));
    out.push_back(std::move(blk));
  }
  return out;
}

struct AnalyzeArgs {
  std::string path;
  bool json = false;
  bool oracle = false;
  std::string three_blocks;
};

int cmd_analyze(const AnalyzeArgs& a) {
  const Document doc = parse_document(read_file(a.path));
  const FamilySpec* family = std::get_if<FamilySpec>(&doc);
  const ProductHom h =
      family ? build_hom_from_family(*family, FlagPolicy::Record) : std::get<ProductHom>(doc);
  AnalysisReport rep = analyze(h, family);
  if (!a.three_blocks.empty()) {
    const auto w = even_betti_witness(normalize(h), parse_blocks(a.three_blocks));
    rep.certificates.push_back(w.cert);
  }
  if (a.oracle) {
    const auto cc = cross_check(h, rep);
    if (!cc.ok()) {
      for (const auto& d : cc.disagreements) std::cerr << "oracle disagreement: " << d << "\n";
      return kFailure;
    }
    std::cerr << "oracle: " << cc.tuples_checked << " tuples and " << cc.residue_counts
              << " residue counts agree\n";
  }
  std::cout << (a.json ? dump(report_to_json(rep)) : render_text(rep));
  return kOk;
}

struct GenerateArgs {
  std::string kind;
  std::size_t k = 0, m = 0, r = 0;
  std::string genera;
  std::string profile;
  bool subdirect_variant = false;
  std::string out;
};

int cmd_generate(const GenerateArgs& a) {
  const auto kind = family_kind_from_string(a.kind);
  if (!kind) throw InputError("unknown family kind '" + a.kind + "'");
  std::vector<int> genera = a.genera.empty() ? std::vector<int>(a.r, 2) : parse_int_list(a.genera, "genus");
  FamilySpec spec;
  switch (*kind) {
    case FamilyKind::Generic: spec = make_generic_family(a.k, a.r, genera, {}, a.subdirect_variant); break;
    case FamilyKind::DPS: spec = make_dps_family(a.r, genera); break;
    case FamilyKind::Extended: spec = make_extended_family(a.m, a.r, genera, a.subdirect_variant); break;
    case FamilyKind::Degenerate: {
      std::vector<std::size_t> profile;
      for (int c : parse_int_list(a.profile, "profile"))
        profile.push_back(c >= 1 ? static_cast<std::size_t>(c) : throw InputError("profile entries must be >= 1"));
      spec = make_degenerate_family(a.k, a.r, profile, genera);
      break;
    }
  }
  const std::string text = serialize_family(spec);
  if (a.out.empty())
    std::cout << text;
  else
    write_atomic(a.out, text);
  return kOk;
}

struct VerifyArgs {
  std::size_t max_r = 7;
  bool clear_flags = false;
  bool json = false;
};

int cmd_verify_paper(const VerifyArgs& a) {
  if (a.max_r < 3 || a.max_r > 12) throw InputError("--max-r must lie in [3, 12]");
  ReproductionOptions opt;
  opt.max_r = a.max_r;
  opt.clear_flags = a.clear_flags;
  const auto rows = run_reproduction(opt);
  std::size_t failed = 0;
  if (a.json) {
    Json arr = Json::array();
    for (const auto& r : rows) {
      Json e;
      e["claim"] = r.claim;
      e["instance"] = r.instance;
      e["expected"] = r.expected;
      e["actual"] = r.actual;
      e["pass"] = r.pass;
      arr.push_back(std::move(e));
      failed += !r.pass;
    }
    std::cout << dump(arr);
  } else {
    for (const auto& r : rows) {
      std::cout << (r.pass ? "PASS  " : "FAIL  ") << std::left << std::setw(30) << r.claim << std::setw(46)
                << r.instance << r.actual;
      if (!r.pass) std::cout << "  (expected " << r.expected << ")";
      std::cout << "\n";
      failed += !r.pass;
    }
    std::cout << rows.size() - failed << "/" << rows.size() << " passed\n";
  }
  for (const auto& r : rows)
    if (!r.pass) std::cerr << "mismatch: " << r.claim << " on " << r.instance << ": expected " << r.expected
                           << ", got " << r.actual << "\n";
  return failed ? kFailure : kOk;
}

struct CatalogArgs {
  std::string kind = "all";
  std::size_t r_min = 3, r_max = 5;
  std::string out;
};

int cmd_catalog(const CatalogArgs& a) {
  const bool generic = a.kind == "generic" || a.kind == "all";
  const bool extended = a.kind == "extended" || a.kind == "all";
  if (!generic && !extended) throw InputError("--kind must be generic, extended or all");
  if (a.r_min < 3 || a.r_max > 12) throw InputError("grid must satisfy 3 <= r-min and r-max <= 12");
  fs::create_directories(a.out);
  Json index = Json::array();
  auto emit = [&](const FamilySpec& spec, const std::string& name, std::size_t param) {
    const auto rep = analyze_family(spec);
    Json doc;
    doc["family"] = family_to_json(spec);
    doc["report"] = report_to_json(rep);
    write_atomic(fs::path(a.out) / name, dump(doc));
    Json e;
    e["file"] = name;
    e["kind"] = to_string(spec.kind);
    e["r"] = spec.r;
    e[spec.kind == FamilyKind::Extended ? "m" : "k"] = param;
    e["finiteness"] = finiteness_json(rep.finiteness);
    index.push_back(std::move(e));
  };
  for (std::size_t r = a.r_min; r <= a.r_max; ++r) {
    if (generic)
      for (std::size_t k = 1; k + 2 <= r; ++k)
        emit(make_generic_family(k, r, std::vector<int>(r, 2)),
             "generic_r" + std::to_string(r) + "_k" + std::to_string(k) + ".json", k);
    if (extended)
      for (std::size_t m = 1; m + 3 <= r; ++m)
        emit(make_extended_family(m, r, std::vector<int>(r, 2)),
             "extended_r" + std::to_string(r) + "_m" + std::to_string(m) + ".json", m);
  }
  std::sort(index.begin(), index.end(),
            [](const Json& x, const Json& y) { return x["file"].get<std::string>() < y["file"].get<std::string>(); });
  Json top;
  top["instances"] = std::move(index);
  write_atomic(fs::path(a.out) / "index.json", dump(top));
  std::cout << "wrote " << top["instances"].size() << " reports to " << a.out << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariants of coabelian subgroups of products of surface groups"};
  app.require_subcommand(1);

  AnalyzeArgs an;
  auto* analyze_cmd = app.add_subcommand("analyze", "analyze a ProductHom or FamilySpec JSON document");
  analyze_cmd->add_option("path", an.path, "input document")->required();
  analyze_cmd->add_flag("--json", an.json, "emit the report as JSON");
  analyze_cmd->add_flag("--oracle", an.oracle, "cross-check every tuple with the oracle module");
  analyze_cmd->add_option("--three-blocks", an.three_blocks, "even-Betti witness blocks, e.g. 1,2/3,4/5,6");

  GenerateArgs gen;
  auto* generate_cmd = app.add_subcommand("generate", "write a FamilySpec document");
  generate_cmd->add_option("kind", gen.kind, "generic | extended | dps | degenerate")->required();
  generate_cmd->add_option("--k", gen.k, "torus dimension (generic, degenerate)");
  generate_cmd->add_option("--m", gen.m, "multiplicity of (1,0) (extended)");
  generate_cmd->add_option("--r", gen.r, "number of factors")->required();
  generate_cmd->add_option("--genera", gen.genera, "comma-separated genera, default all 2");
  generate_cmd->add_option("--profile", gen.profile, "duplicate profile, e.g. 3,1,1 (degenerate)");
  generate_cmd->add_flag("--subdirect-variant", gen.subdirect_variant, "v_{k+1} = (1,...,1), or v_{m+1} = (1,1)");
  generate_cmd->add_option("--out", gen.out, "output path, default stdout");

  VerifyArgs ver;
  auto* verify_cmd = app.add_subcommand("verify-paper", "run the reproduction grid");
  verify_cmd->add_option("--max-r", ver.max_r, "largest number of factors")->capture_default_str();
  verify_cmd->add_flag("--clear-flags", ver.clear_flags, "drop all pi1-surjectivity assertions");
  verify_cmd->add_flag("--json", ver.json, "emit rows as JSON");

  CatalogArgs cat;
  auto* catalog_cmd = app.add_subcommand("catalog", "analyze a grid of families into a directory");
  catalog_cmd->add_option("--kind", cat.kind, "generic | extended | all")->capture_default_str();
  catalog_cmd->add_option("--r-min", cat.r_min)->capture_default_str();
  catalog_cmd->add_option("--r-max", cat.r_max)->capture_default_str();
  catalog_cmd->add_option("--out", cat.out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e) == 0 ? kOk : kInputError;
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e) == 0 ? kOk : kInputError;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(an);
    if (*generate_cmd) return cmd_generate(gen);
    if (*verify_cmd) return cmd_verify_paper(ver);
    if (*catalog_cmd) return cmd_catalog(cat);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
