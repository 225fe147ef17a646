#include "pcdeg/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

namespace pcdeg {

namespace {

nlohmann::json rows_to_json(const std::vector<Int>& flat, int k, int m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < k; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int t = 0; t < m; ++t) row.push_back(flat[static_cast<size_t>(i) * m + t]);
    rows.push_back(row);
  }
  return rows;
}

std::vector<Int> rows_from_json(const nlohmann::json& rows, int k, int m,
                                const char* what) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != k)
    throw std::invalid_argument(std::string(what) + ": wrong row count");
  std::vector<Int> flat;
  for (const auto& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != m)
      throw std::invalid_argument(std::string(what) + ": wrong column count");
    for (const auto& v : row) flat.push_back(v.get<Int>());
  }
  return flat;
}

} // namespace

nlohmann::json witness_to_json(const WitnessMatrix& w) {
  nlohmann::json doc;
  doc["k"] = w.k;
  doc["m"] = w.m;
  doc["A"] = rows_to_json(w.a, w.k, w.m);
  doc["C"] = rows_to_json(w.c, w.k, w.m);
  doc["D"] = rows_to_json(w.d, w.k, w.m);
  return doc;
}

WitnessMatrix witness_from_json(const nlohmann::json& doc) {
  WitnessMatrix w;
  w.k = doc.at("k").get<int>();
  w.m = doc.at("m").get<int>();
  if (w.k < 1 || w.m < 1) throw std::invalid_argument("witness ranks must be >= 1");
  w.a = rows_from_json(doc.at("A"), w.k, w.m, "witness block A");
  w.c = rows_from_json(doc.at("C"), w.k, w.m, "witness block C");
  w.d = rows_from_json(doc.at("D"), w.k, w.m, "witness block D");
  return w;
}

nlohmann::json verdict_to_json(const Verdict& v) {
  nlohmann::json doc;
  switch (v.status) {
    case Verdict::Status::witness:
      doc["status"] = "witness";
      doc["witness"] = witness_to_json(*v.witness);
      break;
    case Verdict::Status::no_solution_proven: {
      doc["status"] = "no_solution_proven";
      nlohmann::json cert;
      switch (v.certificate->kind) {
        case Certificate::Kind::modulus:
          cert["kind"] = "modulus";
          cert["modulus"] = v.certificate->modulus;
          break;
        case Certificate::Kind::rank:
          cert["kind"] = "rank";
          break;
        case Certificate::Kind::rank1_exhaustive:
          cert["kind"] = "rank1_exhaustive";
          break;
      }
      doc["certificate"] = cert;
      break;
    }
    case Verdict::Status::no_solution_within_bounds:
      doc["status"] = "no_solution_within_bounds";
      doc["search"] = {{"box", v.box_used}, {"moduli", v.moduli_used}};
      break;
  }
  return doc;
}

Verdict verdict_from_json(const nlohmann::json& doc) {
  Verdict v;
  std::string status = doc.at("status").get<std::string>();
  if (status == "witness") {
    v.status = Verdict::Status::witness;
    v.witness = witness_from_json(doc.at("witness"));
  } else if (status == "no_solution_proven") {
    v.status = Verdict::Status::no_solution_proven;
    const auto& cert = doc.at("certificate");
    std::string kind = cert.at("kind").get<std::string>();
    Certificate c;
    if (kind == "modulus") {
      c.kind = Certificate::Kind::modulus;
      c.modulus = cert.at("modulus").get<Int>();
    } else if (kind == "rank") {
      c.kind = Certificate::Kind::rank;
    } else if (kind == "rank1_exhaustive") {
      c.kind = Certificate::Kind::rank1_exhaustive;
    } else {
      throw std::invalid_argument("unknown certificate kind: " + kind);
    }
    v.certificate = c;
  } else if (status == "no_solution_within_bounds") {
    v.status = Verdict::Status::no_solution_within_bounds;
    const auto& search = doc.at("search");
    v.box_used = search.at("box").get<Int>();
    v.moduli_used = search.at("moduli").get<std::vector<Int>>();
  } else {
    throw std::invalid_argument("unknown verdict status: " + status);
  }
  return v;
}

nlohmann::json report_to_json(const DegreeReport& report) {
  nlohmann::json doc;
  doc["n"] = report.n;
  doc["range"] = report.range;
  doc["exact"] = report.exact;
  nlohmann::json verdicts = nlohmann::json::array();
  for (const auto& dv : report.verdicts)
    verdicts.push_back({{"d", dv.d}, {"verdict", verdict_to_json(dv.verdict)}});
  doc["verdicts"] = verdicts;
  doc["members"] = report.members();
  if (report.progressions) {
    doc["progressions"] = {{"modulus", report.progressions->modulus},
                           {"classes", report.progressions->classes},
                           {"range", report.progressions->range}};
  } else {
    doc["progressions"] = nullptr;
  }
  return doc;
}

DegreeReport report_from_json(const nlohmann::json& doc) {
  DegreeReport report;
  report.n = doc.at("n").get<int>();
  report.range = doc.at("range").get<Int>();
  report.exact = doc.at("exact").get<bool>();
  for (const auto& jv : doc.at("verdicts"))
    report.verdicts.push_back(
        {jv.at("d").get<Int>(), verdict_from_json(jv.at("verdict"))});
  if (static_cast<Int>(report.verdicts.size()) != 2 * report.range + 1)
    throw std::invalid_argument("report verdict count does not match its range");
  const auto& prog = doc.at("progressions");
  if (!prog.is_null()) {
    APUnion ap;
    ap.modulus = prog.at("modulus").get<Int>();
    ap.classes = prog.at("classes").get<std::vector<Int>>();
    ap.range = prog.at("range").get<Int>();
    report.progressions = ap;
  }
  return report;
}

nlohmann::json classification_to_json(const Classification& cls, const TablePtr& table) {
  ComplexEnumerator en(table, cls.rank);
  nlohmann::json doc;
  doc["n"] = cls.n;
  doc["rank"] = cls.rank;
  doc["family_size"] = cls.family_size;
  doc["class_count"] = cls.classes.size();
  nlohmann::json classes = nlohmann::json::array();
  for (const auto& c : cls.classes) {
    classes.push_back({{"representative", c.representative},
                       {"size", c.members.size()},
                       {"members", c.members},
                       {"representative_complex", complex_to_json(en.at(c.representative))}});
  }
  doc["classes"] = classes;
  return doc;
}

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("cannot parse " + path + ": " + e.what());
  }
  return doc;
}

SearchParams params_from(const CliConfig& config) {
  SearchParams p;
  p.moduli = config.moduli;
  p.box = config.box;
  p.jobs = config.jobs;
  return p;
}

/* table selected by --table / --n, if any */
TablePtr base_table(const CliConfig& config) {
  if (config.table_path)
    return std::make_shared<const GroupTable>(load_table(read_json_file(*config.table_path)));
  if (config.n) return builtin_table_ptr(*config.n);
  return nullptr;
}

bool parse_shorthand(const std::string& spec, const char* prefix, int& out) {
  std::string p = std::string(prefix) + ":";
  if (spec.rfind(p, 0) != 0) return false;
  try {
    size_t used = 0;
    out = std::stoi(spec.substr(p.size()), &used);
    if (used != spec.size() - p.size()) throw std::invalid_argument("");
  } catch (...) {
    throw UsageError("malformed constructor shorthand: " + spec);
  }
  return true;
}

ComplexSpec resolve_complex(const std::string& spec, const TablePtr& base,
                            const char* which) {
  if (spec.empty())
    throw UsageError(std::string("missing --") + which + " (file path or constructor)");
  int k = 0;
  if (parse_shorthand(spec, "product", k)) {
    if (!base) throw UsageError("product:K needs --n or --table to pick the dimension");
    return product_sum(base, k);
  }
  if (parse_shorthand(spec, "zk", k)) {
    if (base && base->n != 7) throw UsageError("zk:K lives at n = 7");
    return z_complex(k);
  }
  if (parse_shorthand(spec, "wk", k)) {
    if (base && base->n != 7) throw UsageError("wk:K lives at n = 7");
    return product_sum(builtin_table_ptr(7), k);
  }
  nlohmann::json doc = read_json_file(spec);
  TablePtr table = base;
  if (!table) {
    auto it = doc.find("n");
    if (it == doc.end() || !it->is_number_integer())
      throw UsageError(spec + ": complex document needs an integer n");
    table = builtin_table_ptr(it->get<int>());
  }
  return complex_from_json(doc, table);
}

void print_witness(std::ostream& out, const WitnessMatrix& w) {
  auto print_block = [&out, &w](const char* name, const std::vector<Int>& flat) {
    out << name << " = [";
    for (int i = 0; i < w.k; ++i) {
      out << (i ? ", [" : "[");
      for (int t = 0; t < w.m; ++t)
        out << (t ? ", " : "") << flat[static_cast<size_t>(i) * w.m + t];
      out << "]";
    }
    out << "]\n";
  };
  print_block("A", w.a);
  print_block("C", w.c);
  print_block("D", w.d);
}

void print_verdict(std::ostream& out, const Verdict& v) {
  switch (v.status) {
    case Verdict::Status::witness:
      out << "Witness\n";
      print_witness(out, *v.witness);
      break;
    case Verdict::Status::no_solution_proven:
      switch (v.certificate->kind) {
        case Certificate::Kind::modulus:
          out << "NoSolutionProven (mod " << v.certificate->modulus << ")\n";
          break;
        case Certificate::Kind::rank:
          out << "NoSolutionProven (rank)\n";
          break;
        case Certificate::Kind::rank1_exhaustive:
          out << "NoSolutionProven (rank-1 exhaustive)\n";
          break;
      }
      break;
    case Verdict::Status::no_solution_within_bounds: {
      out << "NoSolutionWithinBounds (box " << v.box_used << ", moduli ";
      for (size_t i = 0; i < v.moduli_used.size(); ++i)
        out << (i ? "," : "") << v.moduli_used[i];
      out << ")\n";
      break;
    }
  }
}

void print_table(std::ostream& out, const GroupTable& t) {
  auto group_line = [&out](const char* label, const AbGroup& g) {
    out << "  " << label << " orders: [";
    for (size_t i = 0; i < g.factor_count(); ++i) out << (i ? "," : "") << g.order(i);
    out << "]";
    if (g.factor_count()) {
      out << " (";
      for (size_t i = 0; i < g.factor_count(); ++i) out << (i ? ", " : "") << g.name(i);
      out << ")";
    }
    out << "\n";
  };
  auto rows_line = [&out](const char* label, const std::vector<std::vector<Int>>& rows) {
    out << "  " << label << ": [";
    for (size_t r = 0; r < rows.size(); ++r) {
      out << (r ? ", [" : "[");
      for (size_t c = 0; c < rows[r].size(); ++c) out << (c ? "," : "") << rows[r][c];
      out << "]";
    }
    out << "]\n";
  };
  out << "n = " << t.n << "\n";
  group_line("g1", *t.g1);
  group_line("g2", *t.g2);
  rows_line("eta_push", t.eta_push.images);
  out << "  whitehead_eta: [";
  for (size_t i = 0; i < t.whitehead_eta.coeffs().size(); ++i)
    out << (i ? "," : "") << t.whitehead_eta.coeff(i);
  out << "]\n";
  rows_line("hopf_h", t.hopf_h.images);
  Moduli m = required_moduli(t);
  out << "  block moduli: A mod " << m.a << ", C mod " << m.c << ", D mod " << m.d
      << "\n";
}

int run_check(const CliConfig& config, std::ostream& out) {
  TablePtr base = base_table(config);
  ComplexSpec x = resolve_complex(config.x_spec, base, "x");
  ComplexSpec y = resolve_complex(config.y_spec, base, "y");
  if (!config.d) throw UsageError("check needs --d");
  Verdict v = check_degree(x, y, *config.d, params_from(config));
  if (config.json) {
    nlohmann::json doc;
    doc["command"] = "check";
    doc["n"] = x.table->n;
    doc["d"] = *config.d;
    doc["verdict"] = verdict_to_json(v);
    out << doc.dump(2) << "\n";
  } else {
    print_verdict(out, v);
  }
  return v.is_within_bounds() ? kExitUndecided : kExitOk;
}

int run_degrees(const CliConfig& config, std::ostream& out) {
  TablePtr base = base_table(config);
  ComplexSpec x = resolve_complex(config.x_spec, base, "x");
  ComplexSpec y = resolve_complex(config.y_spec, base, "y");
  if (!config.range) throw UsageError("degrees needs --range");
  DegreeReport report = degree_set(x, y, *config.range, params_from(config));
  if (report.exact) report.progressions = infer_progressions(report);
  if (config.json) {
    nlohmann::json doc = report_to_json(report);
    doc["command"] = "degrees";
    out << doc.dump(2) << "\n";
  } else {
    out << "degree set for |d| <= " << report.range
        << (report.exact ? " (exact)" : " (within-bounds escapes present)") << "\n";
    for (const auto& dv : report.verdicts) {
      out << "  d = " << dv.d << ": ";
      print_verdict(out, dv.verdict);
    }
    out << "members: {";
    auto members = report.members();
    for (size_t i = 0; i < members.size(); ++i) out << (i ? ", " : "") << members[i];
    out << "}\n";
    if (report.progressions) {
      out << "CONJECTURE (validated only for |d| <= " << report.progressions->range
          << "): d mod " << report.progressions->modulus << " in {";
      for (size_t i = 0; i < report.progressions->classes.size(); ++i)
        out << (i ? ", " : "") << report.progressions->classes[i];
      out << "}\n";
    } else if (report.exact) {
      out << "no progression pattern within modulus 48\n";
    }
  }
  return report.exact ? kExitOk : kExitUndecided;
}

int run_equiv(const CliConfig& config, std::ostream& out) {
  TablePtr base = base_table(config);
  ComplexSpec x = resolve_complex(config.x_spec, base, "x");
  ComplexSpec y = resolve_complex(config.y_spec, base, "y");
  auto [eq, witness] = is_equivalent(x, y, params_from(config));
  if (config.json) {
    nlohmann::json doc;
    doc["command"] = "equiv";
    doc["n"] = x.table->n;
    doc["equivalent"] = eq;
    doc["witness"] = witness ? witness_to_json(*witness) : nlohmann::json(nullptr);
    out << doc.dump(2) << "\n";
  } else {
    out << (eq ? "equivalent" : "not equivalent") << "\n";
    if (witness) print_witness(out, *witness);
  }
  return kExitOk;
}

int run_classify(const CliConfig& config, std::ostream& out) {
  TablePtr base = base_table(config);
  if (!base) throw UsageError("classify needs --n or --table");
  if (!config.rank) throw UsageError("classify needs --rank");
  Classification cls = classify(base, *config.rank, params_from(config));
  if (config.json) {
    nlohmann::json doc = classification_to_json(cls, base);
    doc["command"] = "classify";
    out << doc.dump(2) << "\n";
  } else {
    out << cls.classes.size() << (cls.classes.size() == 1 ? " class (" : " classes (")
        << cls.family_size << " complexes, n = " << cls.n << ", rank = " << cls.rank
        << ")\n";
    ComplexEnumerator en(base, cls.rank);
    for (size_t i = 0; i < cls.classes.size(); ++i) {
      const auto& c = cls.classes[i];
      out << "class " << i + 1 << ": representative index " << c.representative
          << ", size " << c.members.size() << ", members [";
      for (size_t j = 0; j < c.members.size(); ++j)
        out << (j ? ", " : "") << c.members[j];
      out << "]\n";
      out << "  representative: " << complex_to_json(en.at(c.representative)).dump()
          << "\n";
    }
  }
  return kExitOk;
}

int run_tables(const CliConfig& config, std::ostream& out) {
  std::vector<GroupTable> tables;
  if (config.table_path) {
    tables.push_back(load_table(read_json_file(*config.table_path)));
  } else if (config.n) {
    tables.push_back(builtin_table(*config.n));
  } else {
    for (int n = 4; n <= 7; ++n) tables.push_back(builtin_table(n));
  }
  if (config.json) {
    nlohmann::json doc;
    doc["command"] = "tables";
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& t : tables) arr.push_back(table_to_json(t));
    doc["tables"] = arr;
    out << doc.dump(2) << "\n";
  } else {
    for (const auto& t : tables) print_table(out, t);
  }
  return kExitOk;
}

} // namespace

int run_cli(const CliConfig& config, std::ostream& out) {
  switch (config.command) {
    case CliConfig::Command::check: return run_check(config, out);
    case CliConfig::Command::degrees: return run_degrees(config, out);
    case CliConfig::Command::equiv: return run_equiv(config, out);
    case CliConfig::Command::classify: return run_classify(config, out);
    case CliConfig::Command::tables: return run_tables(config, out);
    case CliConfig::Command::none: break;
  }
  throw UsageError("pick one command: check | degrees | equiv | classify | tables");
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliConfig config;
  std::vector<int> product_args;
  std::optional<int> zk_arg;
  std::vector<Int> moduli_arg;
  bool moduli_given = false;

  CLI::App app{"degree maps between highly connected Poincare complexes"};
  app.require_subcommand(0, 1);

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--n", config.n, "dimension parameter (built-in tables: 4..7)");
    cmd->add_option("--table", config.table_path, "table JSON file");
    cmd->add_option_function<std::vector<Int>>(
           "--moduli",
           [&](const std::vector<Int>& v) {
             moduli_arg = v;
             moduli_given = true;
           },
           "comma-separated certificate moduli")
        ->delimiter(',');
    cmd->add_option("--box", config.box, "A-entry box bound for the general search");
    cmd->add_option("--jobs", config.jobs, "parallel degree queries");
    cmd->add_flag("--json", config.json, "machine-readable output");
  };
  auto add_pair = [&](CLI::App* cmd) {
    cmd->add_option("--x", config.x_spec, "domain complex: JSON file or product:K/zk:K/wk:K");
    cmd->add_option("--y", config.y_spec, "codomain complex: JSON file or product:K/zk:K/wk:K");
    cmd->add_option("--product", product_args,
                    "shorthand: N K for product_sum (fills --x, then --y)")->expected(2);
    cmd->add_option("--zk", zk_arg, "shorthand: K for the twisted n=7 complex");
  };

  CLI::App* check = app.add_subcommand("check", "decide a single degree");
  add_pair(check);
  add_common(check);
  check->add_option("--d", config.d, "degree to decide");

  CLI::App* degrees = app.add_subcommand("degrees", "sweep a degree range");
  add_pair(degrees);
  add_common(degrees);
  degrees->add_option("--range", config.range, "sweep |d| <= range");

  CLI::App* equiv = app.add_subcommand("equiv", "decide homotopy equivalence");
  add_pair(equiv);
  add_common(equiv);

  CLI::App* classify_cmd = app.add_subcommand("classify", "classify a whole family");
  add_common(classify_cmd);
  classify_cmd->add_option("--rank", config.rank, "middle homology rank");

  CLI::App* tables_cmd = app.add_subcommand("tables", "print coefficient tables");
  add_common(tables_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  if (check->parsed()) config.command = CliConfig::Command::check;
  else if (degrees->parsed()) config.command = CliConfig::Command::degrees;
  else if (equiv->parsed()) config.command = CliConfig::Command::equiv;
  else if (classify_cmd->parsed()) config.command = CliConfig::Command::classify;
  else if (tables_cmd->parsed()) config.command = CliConfig::Command::tables;

  if (moduli_given) config.moduli = moduli_arg;

  try {
    /* expand shorthand flags into complex specs */
    if (!product_args.empty()) {
      if (config.n && *config.n != product_args[0])
        throw UsageError("--product dimension conflicts with --n");
      config.n = product_args[0];
      std::string spec = "product:" + std::to_string(product_args[1]);
      (config.x_spec.empty() ? config.x_spec : config.y_spec) = spec;
    }
    if (zk_arg) {
      std::string spec = "zk:" + std::to_string(*zk_arg);
      (config.x_spec.empty() ? config.x_spec : config.y_spec) = spec;
    }
    return run_cli(config, out);
  } catch (const UndecidedError& e) {
    err << "undecided: " << e.what() << "\n";
    return kExitUndecided;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

} // namespace pcdeg
