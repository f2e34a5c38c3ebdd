#include "specweb/concepts.hpp"

#include "specweb/text.hpp"

#include <algorithm>
#include <set>

namespace specweb::concepts {

using structure::DocNode;
using structure::HeadingKind;

const std::vector<ClassEntry>* PackageCatalog::find(std::string_view package) const {
  for (const auto& [name, entries] : buckets) {
    if (name == package) return &entries;
  }
  return nullptr;
}

namespace {

void walk(const DocNode& node, std::string_view trigger, const std::string& parent_title,
          const std::string& chapter_title, std::vector<ClassEntry>& out) {
  const auto& h = node.heading;
  if (h.kind == HeadingKind::Section && text::starts_with(h.title, trigger)) {
    const std::string& group = chapter_title.empty() ? parent_title : chapter_title;
    for (const auto& c : node.children) {
      const auto& ch = c.heading;
      if (ch.kind != HeadingKind::Subsection || structure::is_deep_subsection(ch)) continue;
      out.push_back({ch.title, ch.references, sitegen::page_filename(ch.number), group});
    }
  }
  const std::string& next_chapter = h.kind == HeadingKind::Chapter ? h.title : chapter_title;
  for (const auto& c : node.children) walk(c, trigger, h.title, next_chapter, out);
}

}  // namespace

std::vector<ClassEntry> extract_class_hierarchy(const structure::DocTree& tree, std::string_view trigger) {
  std::vector<ClassEntry> out;
  if (trigger.empty()) return out;
  for (const auto& c : tree.root.children) walk(c, trigger, tree.root.heading.title, {}, out);
  return out;
}

std::string match_package(std::string_view reference, std::span<const std::string> packages) {
  const std::string* best = nullptr;
  for (const auto& p : packages) {
    if (p.empty() || reference.find(p) == std::string_view::npos) continue;
    if (!best || p.size() > best->size()) best = &p;
  }
  return best ? *best : std::string{};
}

PackageCatalog extract_package_catalog(std::span<const ClassEntry> entries, std::span<const std::string> packages) {
  std::vector<std::string> names;
  std::set<std::string> seen;
  auto add = [&](const std::string& p) {
    if (!p.empty() && seen.insert(p).second) names.push_back(p);
  };
  if (packages.empty()) {
    for (const auto& e : entries) {
      for (const auto& r : e.packages) add(r);
    }
  } else {
    for (const auto& p : packages) add(p);
  }

  PackageCatalog catalog;
  for (const auto& n : names) catalog.buckets.emplace_back(n, std::vector<ClassEntry>{});
  std::vector<ClassEntry> unassigned;
  for (const auto& e : entries) {
    if (e.packages.empty()) {
      unassigned.push_back(e);
      continue;
    }
    std::set<std::string> hits;
    for (const auto& r : e.packages) {
      std::string m = match_package(r, names);
      if (!m.empty()) hits.insert(std::move(m));
    }
    for (auto& [name, members] : catalog.buckets) {
      if (hits.count(name)) members.push_back(e);
    }
  }
  if (!unassigned.empty()) catalog.buckets.emplace_back(std::string(kUnassigned), std::move(unassigned));
  return catalog;
}

std::string package_page_filename(std::string_view package) {
  std::string slug = text::slugify(package);
  if (package == kUnassigned) slug = "unassigned";
  if (slug.empty()) slug = "package";
  return std::string(kConceptDir) + "/package-" + slug + ".html";
}

namespace {

std::string class_link(const ClassEntry& e) {
  return "<a class=\"concept-link\" href=\"../" + text::escape_markup(e.page) + "\">" + text::escape_markup(e.name) +
         "</a>";
}

sitegen::PageSpec concept_page(std::string filename, std::string title) {
  sitegen::PageSpec page;
  page.filename = std::move(filename);
  page.title = std::move(title);
  page.role = sitegen::PageRole::Concept;
  page.nav.toc = "index.html";
  return page;
}

}  // namespace

std::vector<sitegen::PageSpec> render_concept_pages(std::span<const ClassEntry> classes,
                                                    const PackageCatalog& catalog) {
  std::vector<sitegen::PageSpec> pages;
  if (!classes.empty()) {
    auto page = concept_page(std::string(kConceptDir) + "/classes.html", "Class Hierarchy");
    std::vector<std::string> groups;
    for (const auto& c : classes) {
      if (std::find(groups.begin(), groups.end(), c.group_title) == groups.end()) groups.push_back(c.group_title);
    }
    for (const auto& g : groups) {
      std::string fragment = "<h2 class=\"concept-group\">" + text::escape_markup(g) + "</h2>\n<ul class=\"concepts\">";
      for (const auto& c : classes) {
        if (c.group_title != g) continue;
        fragment += "\n<li>" + class_link(c);
        if (!c.packages.empty()) {
          fragment += " <span class=\"concept-packages\">(" + text::escape_markup(text::join(c.packages, ", ")) +
                      ")</span>";
        }
        fragment += "</li>";
      }
      fragment += "\n</ul>";
      page.body.push_back(std::move(fragment));
    }
    pages.push_back(std::move(page));
  }
  for (const auto& [name, members] : catalog.buckets) {
    if (members.empty()) continue;
    auto page = concept_page(package_page_filename(name), "Package " + name);
    std::string fragment = "<h2 class=\"concept-package\">" + text::escape_markup(name) + "</h2>\n<ul class=\"concepts\">";
    for (const auto& c : members) fragment += "\n<li>" + class_link(c) + "</li>";
    fragment += "\n</ul>";
    page.body.push_back(std::move(fragment));
    pages.push_back(std::move(page));
  }
  return pages;
}

}  // namespace specweb::concepts
