// specweb: flat document stream -> structured XML -> hypertext site.

#include "specweb/concepts.hpp"
#include "specweb/config.hpp"
#include "specweb/crossref.hpp"
#include "specweb/error.hpp"
#include "specweb/pipeline.hpp"
#include "specweb/structured_xml.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>

namespace fs = std::filesystem;
using namespace specweb;

namespace {

enum Exit { kOk = 0, kValidation = 1, kIo = 2, kMalformed = 3 };

struct Options {
  std::string input;
  std::string out;
  std::string config;
  std::string marker;
  std::string assets;
  long min_occurrence = -1;
  bool dry_run = false;
  bool serial = false;
};

PipelineConfig make_config(const Options& o) {
  PipelineConfig cfg;
  if (!o.config.empty()) cfg = load_config(o.config, cfg);
  if (!o.input.empty()) cfg.input = o.input;
  if (!o.out.empty()) cfg.out = o.out;
  if (!o.marker.empty()) cfg.marker = o.marker;
  if (!o.assets.empty()) cfg.assets = o.assets;
  if (o.min_occurrence >= 0) cfg.min_occurrence = static_cast<std::size_t>(o.min_occurrence);
  if (cfg.input.empty()) throw DocError(ErrorKind::InvalidConfig, "no input given (--input or config key 'input')");
  return cfg;
}

Exec exec_of(const Options& o) { return o.serial ? Exec::Serial : Exec::Parallel; }

void emit(const fs::path& out, const std::string& content) {
  if (out.empty()) {
    std::cout << content;
  } else {
    pipeline::write_file(out, content);
  }
}

int report_validation(const pipeline::ExtractResult& r, const PipelineConfig& cfg) {
  std::cerr << r.diagnostics.format(cfg.input.string());
  if (!r.validation.ok()) std::cerr << r.validation.format();
  const auto errors = r.error_count();
  if (errors) std::cerr << cfg.input.string() << ": " << errors << " validation error(s)\n";
  return errors ? kValidation : kOk;
}

structure::DocTree load_structured(const PipelineConfig& cfg) {
  return structure::parse_structured_xml(pipeline::read_file(cfg.input));
}

void print_site_summary(const pipeline::RenderResult& r, const sitegen::EmitSummary* written) {
  const auto& m = r.manifest;
  std::cout << "pages: " << m.total_pages() << " (" << m.pages.size() << " structural + 1 contents + "
            << m.concept_pages.size() << " concept)\n";
  std::cout << "keywords: " << r.bindings.size() << " headings, " << r.unique.size() << " unambiguous\n";
  std::cout << "classes: " << r.classes.size() << " in " << r.catalog.buckets.size() << " package(s)\n";
  if (written) {
    std::cout << "written: " << written->files << " files, " << written->bytes << " bytes\n";
    for (const auto& w : written->warnings) std::cerr << "warning: " << w << "\n";
  }
}

int cmd_extract(const Options& o) {
  const auto cfg = make_config(o);
  const auto r = pipeline::extract(pipeline::read_file(cfg.input), cfg);
  const int status = report_validation(r, cfg);
  if (status != kOk || o.dry_run) return status;
  emit(cfg.out, structure::serialize_structured_xml(r.tree));
  return kOk;
}

int cmd_render(const Options& o) {
  const auto cfg = make_config(o);
  const auto tree = load_structured(cfg);
  const auto r = pipeline::render(tree, cfg, exec_of(o));
  if (o.dry_run || cfg.out.empty()) {
    print_site_summary(r, nullptr);
    return kOk;
  }
  const auto written = pipeline::write_site(r, cfg.out, exec_of(o));
  print_site_summary(r, &written);
  return kOk;
}

int cmd_concepts(const Options& o) {
  const auto cfg = make_config(o);
  const auto tree = load_structured(cfg);
  const auto classes = concepts::extract_class_hierarchy(tree, cfg.concepts_trigger);
  const auto catalog = concepts::extract_package_catalog(classes, cfg.concepts_packages);
  std::string listing = "package\tclass\tgroup\tpage\n";
  for (const auto& [package, members] : catalog.buckets) {
    for (const auto& c : members) listing += package + '\t' + c.name + '\t' + c.group_title + '\t' + c.page + '\n';
  }
  std::cout << listing;
  if (!cfg.out.empty() && !o.dry_run) {
    for (const auto& page : concepts::render_concept_pages(classes, catalog)) {
      pipeline::write_file(cfg.out / page.filename, sitegen::render_html(page));
    }
  }
  return kOk;
}

int cmd_crossref(const Options& o) {
  auto cfg = make_config(o);
  cfg.concepts_enabled = false;
  cfg.crossref_enabled = true;
  const auto tree = load_structured(cfg);
  const auto r = pipeline::render(tree, cfg, exec_of(o));
  if (o.dry_run) {
    std::cout << r.unique.size() << " unambiguous keyword(s)\n";
    return kOk;
  }
  emit(cfg.out, crossref::format_unique_keywords(r.unique));
  return kOk;
}

int cmd_stats(const Options& o) {
  const auto cfg = make_config(o);
  const auto tree = load_structured(cfg);
  const auto r = pipeline::render(tree, cfg, exec_of(o));
  const stats::ReportRow row = pipeline::compute_stats(tree, r, cfg, exec_of(o));
  const std::string report = stats::emit_report(std::span<const stats::ReportRow>(&row, 1));
  if (o.dry_run) {
    std::cout << report;
    return kOk;
  }
  emit(cfg.out, report);
  return kOk;
}

int cmd_pipeline(const Options& o) {
  const auto start = std::chrono::steady_clock::now();
  const auto cfg = make_config(o);
  if (cfg.out.empty() && !o.dry_run) throw DocError(ErrorKind::InvalidConfig, "pipeline needs --out");
  const auto extracted = pipeline::extract(pipeline::read_file(cfg.input), cfg);
  const int status = report_validation(extracted, cfg);
  if (status != kOk) return status;
  std::cout << "headings: " << extracted.headings << "\n";
  if (o.dry_run) return kOk;

  const std::string xml = structure::serialize_structured_xml(extracted.tree);
  pipeline::write_file(cfg.out / pipeline::kStructuredFilename, xml);

  const auto rendered = pipeline::render(extracted.tree, cfg, exec_of(o));
  const auto written = pipeline::write_site(rendered, cfg.out / pipeline::kSiteDir, exec_of(o));
  print_site_summary(rendered, &written);

  const stats::ReportRow row = pipeline::compute_stats(extracted.tree, rendered, cfg, exec_of(o));
  const std::string report = stats::emit_report(std::span<const stats::ReportRow>(&row, 1));
  pipeline::write_file(cfg.out / pipeline::kReportFilename, report);
  std::cout << report;

  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  std::cout << "done in " << ms << " ms\n";
  return kOk;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::IoFailure:
      return kIo;
    case ErrorKind::InvalidTree:
    case ErrorKind::EmptyNumber:
    case ErrorKind::EmptyHeadings:
    case ErrorKind::EmptyReport:
      return kValidation;
    default:
      return kMalformed;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Re-engineer flat document streams into structured XML and a linked hypertext site"};
  app.require_subcommand(1);

  Options opts;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-i,--input", opts.input, "Input file (flat XML for extract/pipeline, structured XML otherwise)");
    sub->add_option("-o,--out", opts.out, "Output file or directory");
    sub->add_option("-c,--config", opts.config, "key = value configuration file");
    sub->add_option("--marker", opts.marker, "Substring of the id attribute that marks heading paragraphs");
    sub->add_option("--min-occurrence", opts.min_occurrence,
                    "Keep only heading tokens occurring more than this many times");
    sub->add_option("--assets", opts.assets, "Image directory copied into the site");
    sub->add_flag("--dry-run", opts.dry_run, "Validate only, write nothing");
    sub->add_flag("--serial", opts.serial, "Disable parallel kernels");
  };

  struct Command {
    const char* name;
    const char* help;
    int (*run)(const Options&);
  };
  const Command commands[] = {
      {"extract", "Flat XML -> structured XML", cmd_extract},
      {"render", "Structured XML -> site directory", cmd_render},
      {"concepts", "List class and package catalogs", cmd_concepts},
      {"crossref", "Write the unique keyword bindings", cmd_crossref},
      {"stats", "Heading prominence report", cmd_stats},
      {"pipeline", "extract, render and stats in one run", cmd_pipeline},
  };
  int (*selected)(const Options&) = nullptr;
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    add_common(sub);
    sub->callback([&selected, run = c.run] { selected = run; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    return selected(opts);
  } catch (const DocError& e) {
    std::cerr << "specweb: ";
    if (e.line() && !opts.input.empty()) std::cerr << opts.input << ":" << e.line() << ": ";
    std::cerr << error_kind_name(e.kind()) << ": " << e.detail() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "specweb: " << e.what() << "\n";
    return kIo;
  }
}
