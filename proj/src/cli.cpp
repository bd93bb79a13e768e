#include "stepper/cli.hpp"

#include "stepper/morph.hpp"
#include "stepper/render.hpp"
#include "stepper/trace.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <unordered_map>

namespace stepper::cli {

namespace {

using eval::ReductionTrace;
using syntax::Expr;
using syntax::NodeId;

struct Config {
  std::string prelude_path;
  std::string expression;
  std::string expression_path;
  std::size_t max_steps = ReductionTrace::default_max_steps;
  std::string style = "unicode";
  bool render = false;
  bool attributed = false;
  int fps = 30;
  int duration_ms = 700;
  std::string output_dir;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

render::Style style_of(const Config& c) {
  return c.style == "ascii" ? render::Style::ascii : render::Style::unicode;
}

std::string dump(const render::CellGrid& grid, const Config& c) {
  return c.attributed ? grid.attributed_dump() : grid.dump();
}

ReductionTrace make_trace(const Config& c) {
  auto ctx = eval::default_context();
  if (!c.prelude_path.empty()) eval::load_prelude(ctx, read_file(c.prelude_path));
  const std::string source = c.expression_path.empty() ? c.expression : read_file(c.expression_path);
  return ReductionTrace(syntax::parse(source).root, std::move(ctx), c.max_steps);
}

/// Walks the trace as far as it goes, handing each snapshot index to `emit`
/// as soon as it exists.
int drive(ReductionTrace& trace, std::ostream& err, const std::function<void(std::size_t)>& emit) {
  std::size_t i = 0;
  try {
    while (true) {
      emit(i);
      if (!trace.reach(i + 1)) break;
      ++i;
    }
  } catch (const eval::TraceError& e) {
    err << "error at step " << e.step() << ": " << e.reason() << "\n";
    return failure;
  }
  if (trace.truncated()) {
    err << "stopped after " << trace.max_steps() << " steps without reaching a normal form\n";
    return truncated;
  }
  return normal_form;
}

int cmd_steps(const Config& c, std::ostream& out, std::ostream& err) {
  auto trace = make_trace(c);
  return drive(trace, err, [&](std::size_t i) {
    if (i > 0) out << "\n";
    const Expr& e = trace[i].expr;
    out << (c.render ? dump(render::render_static(e, style_of(c)), c) : syntax::print(e)) << "\n";
  });
}

std::unordered_map<NodeId, nlohmann::json> paths_of(const Expr& root) {
  std::unordered_map<NodeId, nlohmann::json> paths;
  std::vector<int> path;
  std::function<void(const Expr&)> walk = [&](const Expr& e) {
    paths.try_emplace(e->id(), path);
    if (!e->is_list()) return;
    const auto& l = e->list();
    for (std::size_t i = 0; i < l.children.size(); ++i) {
      path.push_back(static_cast<int>(i));
      walk(l.children[i]);
      path.pop_back();
    }
    if (l.tail) {
      path.push_back(static_cast<int>(l.children.size()));
      walk(l.tail);
      path.pop_back();
    }
  };
  walk(root);
  return paths;
}

nlohmann::json links_of(const ReductionTrace& trace, std::size_t step) {
  auto links = nlohmann::json::array();
  if (step == 0) return links;
  const auto before = paths_of(trace[step - 1].expr);
  const auto& store = trace[step].link;
  std::vector<std::pair<NodeId, nlohmann::json>> nodes;
  std::vector<int> path;
  std::function<void(const Expr&)> walk = [&](const Expr& e) {
    nodes.emplace_back(e->id(), path);
    if (!e->is_list()) return;
    const auto& l = e->list();
    for (std::size_t i = 0; i < l.children.size(); ++i) {
      path.push_back(static_cast<int>(i));
      walk(l.children[i]);
      path.pop_back();
    }
    if (l.tail) {
      path.push_back(static_cast<int>(l.children.size()));
      walk(l.tail);
      path.pop_back();
    }
  };
  walk(trace[step].expr);
  for (const auto& [id, child_path] : nodes) {
    if (!store.has_explicit_origin(id) && before.contains(id)) continue;
    auto parents = nlohmann::json::array();
    for (NodeId parent : store.origin(id)) {
      if (auto it = before.find(parent); it != before.end()) parents.push_back(it->second);
    }
    links.push_back({{"child", child_path}, {"parents", std::move(parents)}});
  }
  return links;
}

int cmd_provenance(const Config& c, std::ostream& out, std::ostream& err) {
  auto trace = make_trace(c);
  return drive(trace, err, [&](std::size_t i) {
    nlohmann::json line = {{"step", i}, {"links", links_of(trace, i)}};
    out << line.dump() << "\n";
  });
}

int frames_per_step(const Config& c) {
  return static_cast<int>(std::ceil(static_cast<double>(c.duration_ms) * c.fps / 1000.0 - 1e-9)) + 1;
}

int cmd_frames(const Config& c, std::ostream& out, std::ostream& err) {
  auto trace = make_trace(c);
  if (!c.output_dir.empty()) std::filesystem::create_directories(c.output_dir);
  const int n = frames_per_step(c);
  std::size_t written = 0;
  auto emit = [&](const std::string& frame) {
    if (c.output_dir.empty()) {
      if (written > 0) out << '\f';
      out << frame << "\n";
    } else {
      char name[32];
      std::snprintf(name, sizeof name, "frame-%06zu.txt", written);
      std::ofstream file(std::filesystem::path(c.output_dir) / name, std::ios::binary);
      file << frame << "\n";
      if (!file) throw UsageError("cannot write frames to " + c.output_dir);
    }
    ++written;
  };
  return drive(trace, err, [&](std::size_t i) {
    if (i == 0) return;
    morph::Morph m(trace[i - 1].expr, trace[i].expr, trace[i].link);
    for (int j = 0; j < n; ++j) {
      m.set_progress(n == 1 ? 1.0 : static_cast<double>(j) / (n - 1));
      emit(dump(m.render(style_of(c)), c));
    }
  });
}

void add_common_options(CLI::App& cmd, Config& c) {
  auto* expr = cmd.add_option("-e,--expression", c.expression, "Expression to reduce");
  auto* file = cmd.add_option("-f,--file", c.expression_path, "File holding the expression");
  expr->excludes(file);
  cmd.add_option("-p,--prelude", c.prelude_path, "File of top-level definitions");
  cmd.add_option("--max-steps", c.max_steps, "Reduction step limit")->check(CLI::NonNegativeNumber);
  cmd.add_option("--style", c.style, "Box glyphs")->check(CLI::IsMember({"unicode", "ascii"}));
  cmd.add_flag("--attributed", c.attributed, "Prefix rendered rows with intensity codes");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Single-step reduction of Scheme expressions with animated transitions", "stepper"};
  app.require_subcommand(1);
  Config config;

  auto* steps = app.add_subcommand("steps", "Print every snapshot of the reduction");
  add_common_options(*steps, config);
  steps->add_flag("--render", config.render, "Draw snapshots in box notation");

  auto* provenance = app.add_subcommand("provenance", "Export origin links as JSON lines");
  add_common_options(*provenance, config);

  auto* frames = app.add_subcommand("frames", "Emit animation frames for every step");
  add_common_options(*frames, config);
  frames->add_option("--fps", config.fps, "Frames per second")->check(CLI::PositiveNumber);
  frames->add_option("--duration-ms", config.duration_ms, "Duration of one step")
      ->check(CLI::NonNegativeNumber);
  frames->add_option("-o,--output", config.output_dir, "Write one file per frame here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? normal_form : failure;
  }

  for (auto* cmd : {steps, provenance, frames}) {
    if (cmd->parsed() && config.expression.empty() && config.expression_path.empty()) {
      err << "one of -e or -f is required\n";
      return failure;
    }
  }

  try {
    if (steps->parsed()) return cmd_steps(config, out, err);
    if (provenance->parsed()) return cmd_provenance(config, out, err);
    return cmd_frames(config, out, err);
  } catch (const syntax::ParseError& e) {
    err << "parse error at " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return failure;
}

}  // namespace stepper::cli
