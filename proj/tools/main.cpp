// atlas: build a technology-space artifact from a patent corpus, query it,
// and serve it over HTTP.

#include <csignal>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "atlas/artifact.hpp"
#include "atlas/config.hpp"
#include "atlas/explorer.hpp"
#include "atlas/service.hpp"

namespace {

using atlas::Settings;

atlas::HttpServer* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

template <typename T>
std::optional<std::string> flag(const CLI::Option* option, const T& value) {
  if (option->count() == 0) return std::nullopt;
  if constexpr (std::is_same_v<T, std::string>) {
    return value;
  } else {
    return std::to_string(value);
  }
}

std::string need(const Settings& settings, std::string_view key,
                 const std::optional<std::string>& cli) {
  auto value = settings.resolve(key, cli);
  if (!value) {
    throw CLI::RequiredError("--" + std::string(key) + " (or " + Settings::env_name(key) + ")");
  }
  return *value;
}

template <typename Int>
Int as_int(const std::string& text, std::string_view key) {
  try {
    std::size_t used = 0;
    const long long value = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return static_cast<Int>(value);
  } catch (const std::exception&) {
    throw CLI::ValidationError(std::string(key), "expected an integer, got '" + text + "'");
  }
}

atlas::Level as_level(const std::string& text) {
  return atlas::level_from_int(as_int<int>(text, "level"));
}

void print_panel(const atlas::FieldPanel& panel, const atlas::FieldNames& names) {
  const auto name = names.lookup(panel.field);
  std::printf("Field %s%s%s (%d-digit), %s, %zu patent(s)\n", panel.field.c_str(),
              name ? " - " : "", name ? name->c_str() : "", atlas::to_int(panel.level),
              std::string(atlas::to_string(panel.scope)).c_str(), panel.scope_ids.size());
  std::printf("\nTop terms\n");
  for (const auto& t : panel.top_terms) std::printf("  %-40s %g\n", t.term.c_str(), t.score);
  std::printf("\nMost cited\n");
  for (const auto& p : panel.patents_by_citations) {
    std::printf("  %-12s %4zu  %s\n", p.id.c_str(), p.citations, p.title.c_str());
  }
  std::printf("\nMost recent\n");
  for (const auto& p : panel.patents_by_recency) {
    std::printf("  %-12s %-10s  %s\n", p.id.c_str(), p.grant_date.c_str(), p.title.c_str());
  }
  std::printf("\nInventors\n");
  for (const auto& a : panel.top_inventors) std::printf("  %-32s %zu\n", a.name.c_str(), a.count);
  std::printf("\nAssignees\n");
  for (const auto& a : panel.top_assignees) std::printf("  %-32s %zu\n", a.name.c_str(), a.count);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Technology-space ideation engine over a patent corpus"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file (lowest precedence)");

  std::string corpus, out, artifact_dir, stopwords, query, field, ledger, host = "127.0.0.1";
  std::uint64_t seed = 0;
  std::size_t backbone_k = 0, k = 0, k_terms = 0, k_patents = 0;
  int iterations = 0, port = 0, level = 0;

  auto* build = app.add_subcommand("build", "Build an index artifact from a corpus file");
  auto* o_corpus = build->add_option("--corpus", corpus, "Corpus file (JSON lines)");
  auto* o_out = build->add_option("--out", out, "Artifact directory to create");
  auto* o_seed = build->add_option("--seed", seed, "Layout seed");
  auto* o_k = build->add_option("--backbone-k", backbone_k, "Per-node top-k edges on the map");
  auto* o_iter = build->add_option("--iterations", iterations, "Layout iterations");
  auto* o_stop = build->add_option("--stopwords", stopwords, "Stopword list");

  auto* serve = app.add_subcommand("serve", "Serve an artifact over HTTP");
  auto* s_artifact = serve->add_option("--artifact", artifact_dir, "Artifact directory");
  auto* s_port = serve->add_option("--port", port, "Port");
  auto* s_host = serve->add_option("--host", host, "Bind address");
  auto* s_ledger = serve->add_option("--ledger", ledger, "Idea ledger file");

  auto* nearby = app.add_subcommand("nearby", "Rank white-space fields near a query");
  auto* n_artifact = nearby->add_option("--artifact", artifact_dir, "Artifact directory");
  nearby->add_option("--q", query, "Query")->required();
  auto* n_level = nearby->add_option("--level", level, "3 or 4");
  auto* n_k = nearby->add_option("--k", k, "Number of fields");

  auto* panel = app.add_subcommand("panel", "Show the information panel of a field");
  auto* p_artifact = panel->add_option("--artifact", artifact_dir, "Artifact directory");
  panel->add_option("--field", field, "Field code, e.g. A63 or A63H")->required();
  panel->add_option("--q", query, "Query; filters red-space fields to matching patents");
  auto* p_terms = panel->add_option("--k-terms", k_terms, "Terms to list");
  auto* p_patents = panel->add_option("--k-patents", k_patents, "Patents to list");

  CLI11_PARSE(app, argc, argv);

  try {
    const Settings settings = Settings::from_config_file(config_path, atlas::process_env);

    if (*build) {
      atlas::BuildConfig config;
      config.seed = as_int<std::uint64_t>(settings.resolve("seed", flag(o_seed, seed)).value_or("42"), "seed");
      config.backbone_k = as_int<std::size_t>(
          settings.resolve("backbone-k", flag(o_k, backbone_k)).value_or("3"), "backbone-k");
      config.layout_iterations = as_int<int>(
          settings.resolve("iterations", flag(o_iter, iterations)).value_or("300"), "iterations");
      if (auto path = settings.resolve("stopwords", flag(o_stop, stopwords))) config.stopwords = *path;
      const auto manifest = atlas::build_artifact(need(settings, "corpus", flag(o_corpus, corpus)),
                                                  need(settings, "out", flag(o_out, out)), config);
      std::printf("%s\n", manifest.manifest_hash.c_str());
      return 0;
    }

    const std::string dir = need(settings, "artifact",
                                 flag(*serve ? s_artifact : *nearby ? n_artifact : p_artifact,
                                      artifact_dir));
    const auto artifact = atlas::IndexArtifact::load(dir);

    if (*serve) {
      const int bound = as_int<int>(need(settings, "port", flag(s_port, port)), "port");
      const std::string bind = settings.resolve("host", flag(s_host, host)).value_or(host);
      const std::string ledger_path =
          settings.resolve("ledger", flag(s_ledger, ledger))
              .value_or(std::filesystem::path(dir).lexically_normal().string() + ".ideas.jsonl");
      atlas::IdeaLedger ideas(ledger_path, artifact.manifest().manifest_hash);
      atlas::QueryService service(artifact, ideas);
      atlas::HttpServer server(service);
      g_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::fprintf(stderr, "serving %s on %s:%d (ledger %s)\n", dir.c_str(), bind.c_str(), bound,
                   ledger_path.c_str());
      server.run(bind, bound);
      g_server = nullptr;
      return 0;
    }

    if (*nearby) {
      const atlas::Level lvl = as_level(settings.resolve("level", flag(n_level, level)).value_or("3"));
      const std::size_t count = as_int<std::size_t>(settings.resolve("k", flag(n_k, k)).value_or("10"), "k");
      const auto where = atlas::position_domain(artifact.index(), query, lvl);
      if (!where.positioned()) {
        std::fprintf(stderr, "query '%s' matches no patents\n", query.c_str());
        return 2;
      }
      const auto entries = atlas::rank_nearby(where, artifact.level(lvl).matrix, count);
      std::printf("%zu matching patent(s) in %zu red field(s)\n\n", where.matched_ids.size(),
                  where.red_fields.size());
      std::printf("%4s  %-6s  %-12s  %s\n", "rank", "field", "omega", "name");
      std::size_t rank = 0;
      for (const auto& entry : entries) {
        const auto name = artifact.field_names().lookup(entry.field);
        std::printf("%4zu  %-6s  %.10f  %s\n", ++rank, entry.field.c_str(), entry.omega,
                    name ? name->c_str() : "");
      }
      return 0;
    }

    const atlas::Level lvl = field.size() == 4 ? atlas::Level::Subclass : atlas::Level::Class;
    atlas::PanelOptions options;
    options.k_terms = as_int<std::size_t>(settings.resolve("k-terms", flag(p_terms, k_terms)).value_or("10"), "k-terms");
    options.k_patents = as_int<std::size_t>(
        settings.resolve("k-patents", flag(p_patents, k_patents)).value_or("10"), "k-patents");
    std::optional<atlas::DomainPosition> where;
    if (!query.empty()) where = atlas::position_domain(artifact.index(), query, lvl);
    print_panel(atlas::field_panel(artifact.index(), artifact.stopwords(), where ? &*where : nullptr,
                                   lvl, field, options),
                artifact.field_names());
    return 0;
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
