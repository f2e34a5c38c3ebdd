#include "specweb/sitegen.hpp"

#include "specweb/error.hpp"
#include "specweb/text.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace specweb::sitegen {

using structure::HeadingEntry;

const PageSpec* SiteManifest::find(std::string_view filename) const {
  if (toc_page.filename == filename) return &toc_page;
  for (const auto& p : pages) {
    if (p.filename == filename) return &p;
  }
  for (const auto& p : concept_pages) {
    if (p.filename == filename) return &p;
  }
  return nullptr;
}

std::string page_filename(std::string_view number) {
  if (text::trim(number).empty()) throw DocError(ErrorKind::EmptyNumber, "page number is empty");
  std::string name(number);
  std::replace(name.begin(), name.end(), '/', '-');
  std::replace(name.begin(), name.end(), '\\', '-');
  return name + ".html";
}

std::string anchor_id(std::string_view label, std::string_view page_key) {
  std::string slug = text::slugify(label);
  if (slug.empty()) slug = "section";
  return slug + "-" + std::string(page_key);
}

bool owns_page(const HeadingEntry& heading) {
  switch (heading.kind) {
    case HeadingKind::Part:
    case HeadingKind::Chapter:
    case HeadingKind::Section:
    case HeadingKind::Subsection:
    case HeadingKind::EndPart:
    case HeadingKind::LastPart:
      return true;
    default:
      return false;
  }
}

namespace {

std::string heading_label(const HeadingEntry& h) {
  if (h.kind == HeadingKind::Part) {
    std::string s = "Part " + h.number;
    if (!h.title.empty()) s += " - " + h.title;
    return s;
  }
  if (h.number.empty()) return h.title;
  if (h.title.empty()) return h.number;
  return h.number + " " + h.title;
}

int toc_depth(const HeadingEntry& h) {
  switch (h.kind) {
    case HeadingKind::EndPart:
    case HeadingKind::LastPart:
      return 1;
    default:
      return structure::rank(h.kind) - 1;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// block rendering

std::string render_paragraph(const structure::Paragraph& p) {
  return "<p class=\"para\">" + text::escape_markup(p.text) + "</p>";
}

std::string render_figure(const structure::Figure& f) {
  std::string out = "<div class=\"figure\"><img src=\"" + text::escape_markup(f.src) + "\" alt=\"" +
                    text::escape_markup(f.caption.empty() ? f.src : f.caption) + "\"/>";
  if (!f.caption.empty()) out += "<p class=\"caption\">" + text::escape_markup(f.caption) + "</p>";
  out += "</div>";
  return out;
}

std::string render_table(const structure::Table& t) {
  const std::size_t width = t.width();
  std::string out = "<table class=\"doc-table\">";
  if (!t.caption.empty()) out += "\n<caption>" + text::escape_markup(t.caption) + "</caption>";
  auto row = [&](const std::vector<std::string>& cells, std::string_view open, std::string_view close) {
    out += "\n<tr>";
    for (std::size_t i = 0; i < width; ++i) {
      out += open;
      if (i < cells.size()) out += text::escape_markup(cells[i]);
      out += close;
    }
    out += "</tr>";
  };
  for (const auto& r : t.header_rows) row(r, "<th class=\"table-header\">", "</th>");
  for (const auto& r : t.data_rows) row(r, "<td>", "</td>");
  out += "\n</table>";
  return out;
}

namespace {

void render_list_at(const structure::List& l, std::size_t depth, std::string& out) {
  if (l.items.empty()) return;
  out += "<ul class=\"list list-depth-" + std::to_string(depth) + " list-color-" +
         std::to_string(depth % 3) + "\">";
  for (const auto& item : l.items) {
    out += "\n<li>";
    if (!item.label.empty()) out += "<span class=\"list-label\">" + text::escape_markup(item.label) + "</span> ";
    out += "<span class=\"list-title\">" + text::escape_markup(item.title) + "</span>";
    if (item.sublist && !item.sublist->items.empty()) {
      out += '\n';
      render_list_at(*item.sublist, depth + 1, out);
    }
    out += "</li>";
  }
  out += "\n</ul>";
}

}  // namespace

std::string render_list(const structure::List& l) {
  std::string out;
  render_list_at(l, 0, out);
  return out;
}

std::string render_block(const Block& b) {
  struct Visitor {
    std::string operator()(const structure::Paragraph& p) const { return render_paragraph(p); }
    std::string operator()(const structure::Figure& f) const { return render_figure(f); }
    std::string operator()(const structure::Table& t) const { return render_table(t); }
    std::string operator()(const structure::List& l) const { return render_list(l); }
  };
  return std::visit(Visitor{}, b);
}

// ---------------------------------------------------------------------------
// planning

namespace {

struct Item {
  const DocNode* node;
  bool section;  // false: the page owner's own blocks
  int level;
  std::string anchor;
};

struct PagePlan {
  const DocNode* node = nullptr;  // null for the ToC page
  std::string filename;
  std::string key;
  int parent = -1;      // nearest page-owning ancestor
  int toc_parent = -1;  // entry the ToC nests this page under
  std::vector<Item> items;
  std::vector<Anchor> anchors;
  std::set<std::string> ids;
};

struct Plan {
  PagePlan toc;
  std::vector<PagePlan> pages;
  std::vector<HeadingTarget> targets;
  std::vector<std::string> images;
};

class Planner {
public:
  Plan plan;

  explicit Planner(const DocTree& tree) {
    plan.toc.filename = std::string(kTocFilename);
    plan.toc.key = "index";
    plan.toc.items.push_back({&tree.root, false, 0, {}});
    collect_images(tree.root);
    for (const auto& c : tree.root.children) visit(c, -1, -1, 0);
  }

private:
  PagePlan& page(int index) { return index < 0 ? plan.toc : plan.pages[static_cast<std::size_t>(index)]; }

  void collect_images(const DocNode& n) {
    for (const auto& b : n.blocks) {
      if (const auto* f = std::get_if<structure::Figure>(&b)) plan.images.push_back(f->src);
    }
    for (const auto& c : n.children) collect_images(c);
  }

  int enclosing_subsection(const HeadingEntry& h) const {
    for (std::size_t i = plan.pages.size(); i-- > 0;) {
      const auto& p = plan.pages[i];
      if (p.node->heading.kind == HeadingKind::Subsection &&
          text::starts_with(h.number, p.node->heading.number + ".")) {
        return static_cast<int>(i);
      }
    }
    return -1;
  }

  static std::string unique_id(PagePlan& p, const std::string& id) {
    if (p.ids.insert(id).second) return id;
    for (int n = 2;; ++n) {
      std::string candidate = id + "-" + std::to_string(n);
      if (p.ids.insert(candidate).second) return candidate;
    }
  }

  void visit(const DocNode& node, int owner, int page_parent, int level) {
    const auto& h = node.heading;
    int host = -1;
    bool own = owns_page(h);
    if (structure::is_deep_subsection(h)) {
      host = enclosing_subsection(h);
      own = host < 0;
    }
    if (own) {
      PagePlan p;
      p.node = &node;
      p.key = structure::page_key(h);
      p.filename = page_filename(p.key);
      p.parent = page_parent;
      p.toc_parent = page_parent;
      if (h.kind == HeadingKind::EndPart || h.kind == HeadingKind::LastPart) {
        // listed at chapter level: under the enclosing part, if any
        while (p.toc_parent >= 0 && plan.pages[static_cast<std::size_t>(p.toc_parent)].node->heading.kind !=
                                        HeadingKind::Part) {
          p.toc_parent = plan.pages[static_cast<std::size_t>(p.toc_parent)].parent;
        }
      }
      p.items.push_back({&node, false, 0, {}});
      plan.targets.push_back({h.title, h.kind, p.filename, h.source_line});
      plan.pages.push_back(std::move(p));
      const int index = static_cast<int>(plan.pages.size()) - 1;
      for (const auto& c : node.children) visit(c, index, index, 0);
      return;
    }
    const int target = host >= 0 ? host : owner;
    const int item_level = host >= 0 ? 0 : level;
    auto& p = page(target);
    std::string id = host >= 0 ? unique_id(p, "sec-" + h.number) : unique_id(p, anchor_id(h.title, p.key));
    p.anchors.push_back({id, heading_label(h)});
    plan.targets.push_back({h.title, h.kind, p.filename + "#" + id, h.source_line});
    p.items.push_back({&node, true, item_level, std::move(id)});
    for (const auto& c : node.children) visit(c, target, page_parent, item_level + 1);
  }
};

PageSpec render_page(const PagePlan& plan, PageRole role) {
  PageSpec spec;
  spec.filename = plan.filename;
  spec.role = role;
  spec.anchors = plan.anchors;
  if (plan.node) {
    const auto& h = plan.node->heading;
    spec.title = h.title;
    spec.number = h.number;
    spec.kind = h.kind;
    spec.references = h.references;
    spec.source_line = h.source_line;
  } else {
    spec.title = "Contents";
  }
  for (const auto& item : plan.items) {
    if (item.section) {
      const auto& h = item.node->heading;
      const std::string tag = "h" + std::to_string(std::min(6, 2 + item.level));
      const std::string cls = h.kind == HeadingKind::Keyword
                                  ? "keyword-block"
                                  : "heading-rank-" + std::to_string(structure::rank(h.kind));
      spec.body.push_back("<" + tag + " class=\"" + cls + "\" id=\"" + text::escape_markup(item.anchor) +
                          "\">" + text::escape_markup(heading_label(h)) + "</" + tag + ">");
    }
    for (const auto& b : item.node->blocks) spec.body.push_back(render_block(b));
  }
  return spec;
}

void toc_entries(const Plan& plan, int parent, std::string& out) {
  bool opened = false;
  for (std::size_t i = 0; i < plan.pages.size(); ++i) {
    const auto& p = plan.pages[i];
    if (p.toc_parent != parent) continue;
    if (!opened) {
      out += "<ul class=\"toc\">";
      opened = true;
    }
    const auto& h = p.node->heading;
    out += "\n<li class=\"toc-entry toc-depth-" + std::to_string(toc_depth(h)) + "\"><a class=\"toc-link\" href=\"" +
           text::escape_markup(p.filename) + "\">" + text::escape_markup(heading_label(h)) + "</a>";
    std::string nested;
    toc_entries(plan, static_cast<int>(i), nested);
    if (!nested.empty()) out += "\n" + nested;
    out += "</li>";
  }
  if (opened) out += "\n</ul>";
}

PageSpec toc_page_from(const Plan& plan, std::span<const PageSpec> concept_pages) {
  PageSpec toc = render_page(plan.toc, PageRole::Toc);
  std::string list;
  toc_entries(plan, -1, list);
  if (!list.empty()) toc.body.insert(toc.body.begin(), std::move(list));
  if (!concept_pages.empty()) {
    std::string links = "<h2 class=\"concepts-heading\">Concepts</h2>\n<ul class=\"toc concept-links\">";
    for (const auto& c : concept_pages) {
      links += "\n<li><a class=\"toc-link\" href=\"" + text::escape_markup(c.filename) + "\">" +
               text::escape_markup(c.title) + "</a></li>";
    }
    links += "\n</ul>";
    toc.body.push_back(std::move(links));
  }
  return toc;
}

}  // namespace

PageSpec render_toc(const DocTree& tree, std::span<const PageSpec> concept_pages) {
  Planner planner(tree);
  return toc_page_from(planner.plan, concept_pages);
}

SiteManifest paginate(const DocTree& tree, Exec exec) {
  const auto report = structure::validate_tree(tree);
  if (!report.ok()) {
    const auto& first = report.violations.front();
    throw DocError(ErrorKind::InvalidTree, first.message, first.lines.empty() ? 0 : first.lines.front());
  }
  Planner planner(tree);
  const Plan& plan = planner.plan;

  SiteManifest manifest;
  manifest.pages.resize(plan.pages.size());
  const long n = static_cast<long>(plan.pages.size());
#pragma omp parallel for schedule(dynamic, 4) if (exec == Exec::Parallel)
  for (long i = 0; i < n; ++i) {
    manifest.pages[static_cast<std::size_t>(i)] =
        render_page(plan.pages[static_cast<std::size_t>(i)], PageRole::Structural);
  }
  manifest.toc_page = toc_page_from(plan, {});
  manifest.targets = plan.targets;
  manifest.image_sources = plan.images;
  return manifest;
}

SiteManifest link_pages(SiteManifest manifest) {
  auto& pages = manifest.pages;
  for (auto& p : pages) p.nav = NavLinks{};
  for (std::size_t i = 0; i + 1 < pages.size(); ++i) {
    pages[i].nav.next = pages[i + 1].filename;
    pages[i + 1].nav.prev = pages[i].filename;
  }
  manifest.toc_page.nav = NavLinks{};
  for (auto& c : manifest.concept_pages) c.nav = NavLinks{};
  return manifest;
}

void attach_concept_pages(SiteManifest& manifest, const DocTree& tree, std::vector<PageSpec> concept_pages) {
  manifest.concept_pages = std::move(concept_pages);
  auto nav = manifest.toc_page.nav;
  manifest.toc_page = render_toc(tree, manifest.concept_pages);
  manifest.toc_page.nav = std::move(nav);
}

// ---------------------------------------------------------------------------
// HTML

namespace {

std::string root_prefix(std::string_view filename) {
  std::string prefix;
  for (char c : filename) {
    if (c == '/') prefix += "../";
  }
  return prefix;
}

std::string nav_bar(const PageSpec& page, const std::string& prefix) {
  std::string out = "<div class=\"nav\">";
  auto link = [&](const std::optional<std::string>& target, std::string_view cls, std::string_view label) {
    if (target) {
      out += "<a class=\"" + std::string(cls) + "\" href=\"" + text::escape_markup(prefix + *target) + "\">" +
             std::string(label) + "</a>";
    } else {
      out += "<span class=\"" + std::string(cls) + " nav-disabled\">" + std::string(label) + "</span>";
    }
  };
  if (page.role == PageRole::Structural) {
    link(page.nav.prev, "nav-prev", "Previous");
    out += " | ";
    link(page.nav.toc, "nav-toc", "Contents");
    out += " | ";
    link(page.nav.next, "nav-next", "Next");
  } else {
    link(page.nav.toc, "nav-toc", "Contents");
  }
  out += "</div>\n";
  return out;
}

}  // namespace

std::string render_html(const PageSpec& page) {
  const std::string prefix = root_prefix(page.filename);
  HeadingEntry h{page.kind, page.number, page.title, {}, 0};
  const std::string label = page.role == PageRole::Structural ? heading_label(h) : page.title;

  std::string out;
  out += "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\"/>\n<title>";
  out += text::escape_markup(label);
  out += "</title>\n<link rel=\"stylesheet\" type=\"text/css\" href=\"" + prefix + std::string(kStylesheetFilename) +
         "\"/>\n</head>\n<body>\n";
  out += nav_bar(page, prefix);
  out += "<h1 class=\"heading-rank-" + std::to_string(structure::rank(page.kind)) + "\">" +
         text::escape_markup(label) + "</h1>\n";
  if (!page.references.empty()) {
    out += "<p class=\"references\">(from " + text::escape_markup(text::join(page.references, ", ")) + ")</p>\n";
  }
  out += "<div class=\"content\">\n";
  for (const auto& fragment : page.body) {
    out += fragment;
    out += '\n';
  }
  out += "</div>\n";
  if (page.role == PageRole::Structural) out += nav_bar(page, prefix);
  out += "</body>\n</html>\n";
  return out;
}

std::string stylesheet() {
  return R"(body { font-family: Georgia, serif; margin: 2em auto; max-width: 60em; color: #222; }
.nav { font-family: sans-serif; font-size: 0.9em; margin: 0.5em 0; }
.nav-disabled { color: #aaa; }
.heading-rank-0 { color: #333; }
.heading-rank-1 { color: darkred; }
.heading-rank-2 { color: darkblue; }
.heading-rank-3 { color: darkgreen; }
.heading-rank-4 { color: teal; }
.heading-rank-6, .heading-rank-7 { color: #553; }
.keyword-block { color: purple; }
.references { font-style: italic; color: #666; }
.para { text-align: justify; }
.figure { text-align: center; margin: 1em 0; }
.figure img { max-width: 100%; }
.caption { text-align: center; font-style: italic; }
table.doc-table { border-collapse: collapse; margin: 1em auto; }
table.doc-table caption { font-weight: bold; padding: 0.3em; }
table.doc-table th.table-header { background: #dde; border: 1px solid #889; padding: 0.2em 0.5em; }
table.doc-table td { border: 1px solid #889; padding: 0.2em 0.5em; }
.list { text-align: justify; }
.list-color-0 { color: navy; }
.list-color-1 { color: maroon; }
.list-color-2 { color: olive; }
ul.toc { list-style: none; }
.toc-depth-0 { margin-left: 0; font-weight: bold; }
.toc-depth-1 { margin-left: 1em; }
.toc-depth-2 { margin-left: 2em; }
.toc-depth-3 { margin-left: 3em; }
a.toc-link:link { color: #1a0dab; }
a.toc-link:visited { color: #609; }
a:visited { color: #609; }
)";
}

// ---------------------------------------------------------------------------
// emission

namespace {

namespace fs = std::filesystem;

void write_file(const fs::path& path, std::string_view content) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  if (ec) throw DocError(ErrorKind::IoFailure, "cannot create " + path.parent_path().string() + ": " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DocError(ErrorKind::IoFailure, "cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw DocError(ErrorKind::IoFailure, "write failed: " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DocError(ErrorKind::IoFailure, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

EmitSummary emit_site(const SiteManifest& manifest, const fs::path& out_dir, Exec exec) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir)) {
    throw DocError(ErrorKind::IoFailure, "cannot create output directory " + out_dir.string());
  }

  std::vector<const PageSpec*> all;
  all.push_back(&manifest.toc_page);
  for (const auto& p : manifest.pages) all.push_back(&p);
  for (const auto& p : manifest.concept_pages) all.push_back(&p);

  std::vector<std::string> errors(all.size());
  std::vector<std::size_t> sizes(all.size(), 0);
  const long n = static_cast<long>(all.size());
#pragma omp parallel for schedule(dynamic, 8) if (exec == Exec::Parallel)
  for (long i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      const std::string html = render_html(*all[idx]);
      write_file(out_dir / all[idx]->filename, html);
      sizes[idx] = html.size();
    } catch (const std::exception& e) {
      errors[idx] = e.what();
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw DocError(ErrorKind::IoFailure, e);
  }

  EmitSummary summary;
  for (std::size_t i = 0; i < all.size(); ++i) {
    summary.written.push_back(all[i]->filename);
    summary.bytes += sizes[i];
  }
  const std::string css = stylesheet();
  write_file(out_dir / kStylesheetFilename, css);
  summary.written.emplace_back(kStylesheetFilename);
  summary.bytes += css.size();

  if (!manifest.asset_dir.empty() && fs::is_directory(manifest.asset_dir)) {
    std::vector<fs::path> assets;
    for (const auto& entry : fs::recursive_directory_iterator(manifest.asset_dir)) {
      if (entry.is_regular_file()) assets.push_back(entry.path());
    }
    std::sort(assets.begin(), assets.end());
    const fs::path dest_root = out_dir / kImageDir;
    if (fs::weakly_canonical(manifest.asset_dir) != fs::weakly_canonical(dest_root)) {
      for (const auto& src : assets) {
        const fs::path rel = fs::relative(src, manifest.asset_dir);
        const std::string bytes = read_file(src);
        write_file(dest_root / rel, bytes);
        summary.written.push_back((fs::path(kImageDir) / rel).generic_string());
        summary.bytes += bytes.size();
      }
    }
  }

  std::set<std::string> checked;
  for (const auto& src : manifest.image_sources) {
    if (!checked.insert(src).second) continue;
    if (!fs::exists(out_dir / src)) summary.warnings.push_back("image not found: " + src);
  }

  std::sort(summary.written.begin(), summary.written.end());
  summary.files = summary.written.size();
  return summary;
}

}  // namespace specweb::sitegen
