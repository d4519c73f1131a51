// gpdkit: validate .gpd files and export their algebraic data.

#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "gpdkit/algebra.hpp"
#include "gpdkit/io.hpp"
#include "gpdkit/representation.hpp"
#include "gpdkit/schwinger.hpp"
#include "gpdkit/speclang.hpp"

namespace fs = std::filesystem;
using namespace gpdkit;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kParse = 2;
constexpr int kIo = 3;

struct Exit {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Exit{kIo, "cannot read '" + path + "'"};
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw Exit{kIo, "error while reading '" + path + "'"};
  return os.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Exit{kIo, "cannot write '" + path.string() + "'"};
}

speclang::Elaboration load(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return speclang::elaborate(speclang::parse(text));
  } catch (const speclang::UnexpectedCharacter& e) {
    throw Exit{kParse, path + ":" + e.what()};
  } catch (const speclang::SyntaxError& e) {
    throw Exit{kParse, path + ":" + e.what()};
  } catch (const speclang::ElaborationError& e) {
    throw Exit{kInvalid, path + ":" + e.what()};
  }
}

const FiniteGroupoid& groupoid_named(const speclang::Elaboration& e, const std::string& name) {
  if (const auto* g = e.groupoid(name)) return *g;
  if (e.contains(name)) throw Exit{kParse, "'" + name + "' is an event space, not a groupoid"};
  throw Exit{kParse, "no declaration named '" + name + "'"};
}

const EventSpace& space_named(const speclang::Elaboration& e, const std::string& name) {
  if (const auto* s = e.event_space(name)) return *s;
  if (e.contains(name)) throw Exit{kParse, "'" + name + "' is a groupoid, not an event space"};
  throw Exit{kParse, "no declaration named '" + name + "'"};
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// ---------------------------------------------------------------------------

int cmd_validate(const std::string& file) {
  const auto e = load(file);
  bool ok = true;
  for (const auto& name : e.order) {
    if (const auto* g = e.groupoid(name)) {
      const auto report = validate(g->tables());
      std::cout << name << ": groupoid, " << g->object_count() << " objects, " << g->morphism_count()
                << " morphisms, " << report.summary() << "\n";
      ok = ok && report.ok();
    } else {
      const auto& s = *e.event_space(name);
      std::cout << name << ": event space, " << s.frames().size() << " frames, " << s.class_count()
                << " classes, ok\n";
    }
  }
  std::cout << (ok ? "valid" : "invalid") << "\n";
  return ok ? kOk : kInvalid;
}

int cmd_info(const std::string& file, const std::string& name) {
  const auto e = load(file);
  if (const auto* s = e.event_space(name)) {
    std::cout << "frames " << s->frames().size() << ", classes " << s->class_count() << "\n";
    for (EventClass c = 0; c < s->class_count(); ++c) std::cout << "class " << c << ": " << s->class_label(c) << "\n";
    return kOk;
  }
  const auto& g = groupoid_named(e, name);
  const auto part = orbits(g);
  std::vector<std::size_t> orders;
  for (const auto& orbit : part.orbits) orders.push_back(isotropy_group(g, orbit.front()).elements.size());
  std::cout << "objects " << g.object_count() << ", morphisms " << g.morphism_count() << ", orbits "
            << part.orbits.size() << ", principal " << yes_no(is_principal(g)) << ", connected "
            << yes_no(is_connected(g)) << ", ";
  bool same = std::all_of(orders.begin(), orders.end(), [&](auto o) { return o == orders.front(); });
  if (same && orders.front() == 1) {
    std::cout << "isotropy trivial\n";
  } else if (same) {
    std::cout << "isotropy order " << orders.front() << "\n";
  } else {
    std::cout << "isotropy orders";
    for (std::size_t k = 0; k < orders.size(); ++k) std::cout << (k ? ", " : " ") << orders[k];
    std::cout << "\n";
  }
  for (std::size_t k = 0; k < part.orbits.size(); ++k) {
    std::cout << "orbit " << k << ":";
    for (std::size_t i = 0; i < part.orbits[k].size(); ++i) {
      std::cout << (i ? ", " : " ") << g.object_label(part.orbits[k][i]);
    }
    std::cout << " (isotropy order " << orders[k] << ")\n";
  }
  return kOk;
}

std::string file_stem(MorphismIndex m, const std::string& label) {
  std::string safe;
  for (char c : label) safe += std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ? c : '_';
  return std::to_string(m) + "_" + safe;
}

int cmd_rep(const std::string& file, const std::string& name, const std::string& which,
            const std::string& out_dir, const std::string& format) {
  const auto e = load(file);
  const auto& g = groupoid_named(e, name);
  std::vector<MatrixC> mats;
  if (which == "fundamental") {
    for (MorphismIndex m = 0; m < g.morphism_count(); ++m) mats.push_back(fundamental_matrix(g, m));
  } else {
    mats = regular_rep(g);
  }

  io::Json basis = io::Json::array();
  for (MorphismIndex m = 0; m < g.morphism_count(); ++m) {
    io::Json b;
    b["index"] = m;
    b["label"] = g.morphism_label(m);
    b["source"] = g.object_label(g.source(m));
    b["target"] = g.object_label(g.target(m));
    basis.push_back(std::move(b));
  }

  if (!out_dir.empty()) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw Exit{kIo, "cannot create directory '" + out_dir + "': " + ec.message()};
    io::Json index;
    index["groupoid"] = name;
    index["representation"] = which;
    index["basis"] = basis;
    for (MorphismIndex m = 0; m < g.morphism_count(); ++m) {
      const fs::path p = fs::path(out_dir) / (file_stem(m, g.morphism_label(m)) + "." + format);
      index["basis"][m]["file"] = p.filename().string();
      write_file(p, format == "csv" ? io::matrix_to_csv(mats[m]) : io::matrix_to_json(mats[m]).dump() + "\n");
    }
    write_file(fs::path(out_dir) / "index.json", index.dump(2) + "\n");
    std::cout << "wrote " << g.morphism_count() << " matrices to " << out_dir << "\n";
    return kOk;
  }

  if (format == "csv") {
    for (MorphismIndex m = 0; m < g.morphism_count(); ++m) {
      std::cout << "# " << m << " " << g.morphism_label(m) << "\n" << io::matrix_to_csv(mats[m]);
    }
    return kOk;
  }
  io::Json doc;
  doc["groupoid"] = name;
  doc["representation"] = which;
  doc["basis"] = basis;
  doc["matrices"] = io::Json::array();
  for (const auto& m : mats) doc["matrices"].push_back(io::matrix_to_json(m));
  std::cout << doc.dump(2) << "\n";
  return kOk;
}

int cmd_cstar(const std::string& file, const std::string& name, std::size_t samples, std::uint64_t seed) {
  const auto e = load(file);
  const auto& g = groupoid_named(e, name);
  const auto star = check_star_rep(g, samples, seed);

  double worst = 0.0;
  std::size_t checked = 0;
  auto check = [&](const AlgebraElement& f) {
    worst = std::max(worst, check_cstar_identity(g, f).relative_deviation);
    ++checked;
  };
  for (MorphismIndex m = 0; m < g.morphism_count(); ++m) check(delta(g, m));
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) check(random_element(g, rng));

  const bool pass = star.passed() && worst <= kNormTolerance;
  std::cout << "star representation: max deviation " << io::format_double(star.max_deviation) << " over "
            << star.basis_checked << " basis and " << star.random_checked << " random elements (tolerance "
            << io::format_double(kMatrixTolerance) << ")\n";
  std::cout << "C* identity: max relative deviation " << io::format_double(worst) << " over " << checked
            << " elements (tolerance " << io::format_double(kNormTolerance) << ")\n";
  std::cout << (pass ? "pass" : "fail") << "\n";
  return pass ? kOk : kInvalid;
}

int cmd_schwinger(const std::string& file, const std::string& name, const std::string& sub,
                  std::uint64_t seed, const std::string& matrices) {
  const auto e = load(file);
  const auto& space = space_named(e, name);
  if (sub == "total") {
    std::cout << io::groupoid_to_json(total_groupoid(space)).dump(2) << "\n";
    return kOk;
  }
  if (sub == "exchange") {
    const auto sweep = sweep_exchange(space, seed);
    std::cout << "checked " << sweep.checked << " quadruples, ";
    if (sweep.failures == 0) {
      std::cout << "all pass";
    } else {
      std::cout << sweep.failures << " failures";
    }
    std::cout << " (" << (sweep.exhaustive ? "exhaustive" : "sampled, seed " + std::to_string(seed)) << ")\n";
    return sweep.failures == 0 ? kOk : kInvalid;
  }
  if (matrices.empty()) throw Exit{kParse, "superop needs --matrices FILE"};
  io::Json doc;
  try {
    doc = io::Json::parse(read_file(matrices));
  } catch (const io::Json::parse_error& err) {
    throw Exit{kParse, matrices + ": " + err.what()};
  }
  try {
    const auto agg = CellAggregate::create(space, io::matrix_from_json(doc.at("T")),
                                           io::matrix_from_json(doc.at("T_prime")));
    std::cout << io::matrix_to_json(represent_cells(agg, io::matrix_from_json(doc.at("A")))).dump(2) << "\n";
  } catch (const io::Json::exception& err) {
    throw Exit{kParse, matrices + ": " + err.what()};
  } catch (const io::FormatError& err) {
    throw Exit{kParse, matrices + ": " + err.what()};
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite groupoids, their algebras and the measurement 2-groupoid"};
  app.require_subcommand(1);

  std::string file, name, which, out_dir, format = "json", sub, matrices;
  std::size_t samples = 100;
  std::uint64_t seed = 0;

  auto* validate_cmd = app.add_subcommand("validate", "Check every declaration of a .gpd file");
  validate_cmd->add_option("file", file, "Input .gpd file")->required();

  auto* info_cmd = app.add_subcommand("info", "Orbits, isotropy and flags of a declaration");
  info_cmd->add_option("file", file, "Input .gpd file")->required();
  info_cmd->add_option("name", name, "Declaration name")->required();

  auto* rep_cmd = app.add_subcommand("rep", "Export the matrices of a representation");
  rep_cmd->add_option("file", file, "Input .gpd file")->required();
  rep_cmd->add_option("name", name, "Groupoid name")->required();
  rep_cmd->add_option("--which", which, "fundamental or regular")
      ->required()
      ->check(CLI::IsMember({"fundamental", "regular"}));
  rep_cmd->add_option("--out", out_dir, "Write one file per matrix into this directory");
  rep_cmd->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* cstar_cmd = app.add_subcommand("cstar", "Check the *-representation and the C*-identity");
  cstar_cmd->add_option("file", file, "Input .gpd file")->required();
  cstar_cmd->add_option("name", name, "Groupoid name")->required();
  cstar_cmd->add_option("--samples", samples, "Random elements to test");
  cstar_cmd->add_option("--seed", seed, "Random seed");

  auto* schwinger_cmd = app.add_subcommand("schwinger", "Measurement groupoid of an event space");
  schwinger_cmd->add_option("file", file, "Input .gpd file")->required();
  schwinger_cmd->add_option("name", name, "Event space name")->required();
  schwinger_cmd->add_option("action", sub, "total, exchange or superop")
      ->required()
      ->check(CLI::IsMember({"total", "exchange", "superop"}));
  schwinger_cmd->add_option("--seed", seed, "Random seed for sampled sweeps");
  schwinger_cmd->add_option("--matrices", matrices, "JSON file with T, T_prime and A");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*validate_cmd) return cmd_validate(file);
    if (*info_cmd) return cmd_info(file, name);
    if (*rep_cmd) return cmd_rep(file, name, which, out_dir, format);
    if (*cstar_cmd) return cmd_cstar(file, name, samples, seed);
    return cmd_schwinger(file, name, sub, seed, matrices);
  } catch (const Exit& e) {
    // validate reports on standard output
    (*validate_cmd ? std::cout : std::cerr) << "gpdkit: " << e.message << "\n";
    return e.code;
  } catch (const Error& e) {
    std::cerr << "gpdkit: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "gpdkit: internal error: " << e.what() << "\n";
    return kInvalid;
  }
}
