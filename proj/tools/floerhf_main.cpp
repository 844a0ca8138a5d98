// Command line front end: computes Floer homology of algebraically finite
// mapping classes and of plane curve singularity monodromies.

#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "floerhf/errors.hpp"
#include "floerhf/report.hpp"

namespace {

using floerhf::io::InputDocument;
using floerhf::io::RunResult;
using json = floerhf::io::json;

struct Options {
  std::vector<std::string> files;
  bool as_json = false;
  long order_bound = 64;
  bool order_bound_given = false;
  int jobs = 1;
  std::string embedding_file;
  std::string dot_out;
};

RunResult process(const std::string& command, const std::string& path, const Options& opt) {
  RunResult res;
  json doc_json;
  try {
    std::ifstream in(path);
    if (!in) throw floerhf::error(floerhf::errc::syntax_error, "cannot open " + path);
    in >> doc_json;
  } catch (const floerhf::error& e) {
    res.report = {{"schema_version", 1}, {"command", command},
                  {"error", {{"code", "SyntaxError"}, {"message", e.what()}}}};
    res.exit_code = 1;
    return res;
  } catch (const std::exception& e) {
    res.report = {{"schema_version", 1}, {"command", command},
                  {"error", {{"code", "SyntaxError"}, {"message", e.what()}}}};
    res.exit_code = 1;
    return res;
  }
  InputDocument doc;
  try {
    doc = floerhf::io::parse_document(doc_json);
    // The document's own option applies unless the flag was given explicitly.
    if (opt.order_bound_given) doc.order_bound = opt.order_bound;
    if (!opt.embedding_file.empty()) {
      std::ifstream ein(opt.embedding_file);
      if (!ein)
        throw floerhf::error(floerhf::errc::syntax_error,
                             "cannot open " + opt.embedding_file);
      json ej;
      ein >> ej;
      doc.embedding = floerhf::io::parse_embedding(ej);
    }
  } catch (const floerhf::error& e) {
    res.report = {{"schema_version", 1}, {"command", command},
                  {"error", {{"code", floerhf::errc_name(e.code())}, {"message", e.what()}}}};
    res.exit_code = 1;
    return res;
  } catch (const std::exception& e) {
    res.report = {{"schema_version", 1}, {"command", command},
                  {"error", {{"code", "SyntaxError"}, {"message", e.what()}}}};
    res.exit_code = 1;
    return res;
  }
  if (command == "validate") return floerhf::io::cmd_validate(doc);
  if (command == "hf-map") return floerhf::io::cmd_hf_map(doc);
  if (command == "hf-sing") return floerhf::io::cmd_hf_sing(doc);
  if (command == "splice") return floerhf::io::cmd_splice(doc, !opt.dot_out.empty());
  res.exit_code = 1;
  return res;
}

int run_command(const std::string& command, const Options& opt) {
  std::vector<RunResult> results(opt.files.size());
  if (opt.jobs <= 1 || opt.files.size() <= 1) {
    for (std::size_t i = 0; i < opt.files.size(); ++i)
      results[i] = process(command, opt.files[i], opt);
  } else {
    std::vector<std::thread> pool;
    std::size_t next = 0;
    std::mutex mu;
    int nthreads = std::min<std::size_t>(opt.jobs, opt.files.size());
    for (int t = 0; t < nthreads; ++t)
      pool.emplace_back([&] {
        for (;;) {
          std::size_t i;
          {
            std::lock_guard<std::mutex> lock(mu);
            if (next >= opt.files.size()) return;
            i = next++;
          }
          results[i] = process(command, opt.files[i], opt);
        }
      });
    for (auto& th : pool) th.join();
  }
  int exit_code = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (opt.as_json)
      std::cout << results[i].report.dump(2) << "\n";
    else
      std::cout << floerhf::io::render_text(results[i].report);
    exit_code = std::max(exit_code, results[i].exit_code);
    if (!opt.dot_out.empty() && !results[i].dot.empty()) {
      std::ofstream out(opt.dot_out);
      out << results[i].dot;
    }
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Floer homology of algebraically finite mapping classes"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* sub, bool with_order) {
    sub->add_option("files", opt.files, "input JSON documents")->required()->expected(-1);
    sub->add_flag("--json", opt.as_json, "emit the machine-readable JSON report");
    sub->add_option("--jobs", opt.jobs, "process input files concurrently");
    if (with_order)
      sub->add_option("--order-bound", opt.order_bound,
                      "series truncation order for Newton-Puiseux (default 64)");
  };

  CLI::App* hf_map = app.add_subcommand("hf-map", "Floer homology of a finite type map");
  add_common(hf_map, false);
  CLI::App* hf_sing =
      app.add_subcommand("hf-sing", "Floer homology of a singularity monodromy");
  add_common(hf_sing, true);
  hf_sing->add_option("--embedding", opt.embedding_file,
                      "embedding description (complement pieces and disks)");
  CLI::App* splice = app.add_subcommand("splice", "splice diagram and characteristic set");
  add_common(splice, true);
  splice->add_option("--dot", opt.dot_out, "write the diagram as DOT to this file");
  CLI::App* validate = app.add_subcommand("validate", "validate an input document");
  add_common(validate, true);

  CLI11_PARSE(app, argc, argv);

  for (CLI::App* sub : {hf_sing, splice, validate})
    if (sub->parsed() && sub->count("--order-bound") > 0) opt.order_bound_given = true;

  if (hf_map->parsed()) return run_command("hf-map", opt);
  if (hf_sing->parsed()) return run_command("hf-sing", opt);
  if (splice->parsed()) return run_command("splice", opt);
  if (validate->parsed()) return run_command("validate", opt);
  return 1;
}
