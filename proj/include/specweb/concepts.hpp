#pragma once

#include "specweb/sitegen.hpp"
#include "specweb/structure.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace specweb::concepts {

inline constexpr std::string_view kDefaultTrigger = "Class Descriptions";
inline constexpr std::string_view kUnassigned = "(unassigned)";
inline constexpr std::string_view kConceptDir = "concepts";

struct ClassEntry {
  std::string name;
  std::vector<std::string> packages;
  std::string page;
  std::string group_title;
  bool operator==(const ClassEntry&) const = default;
};

/// Package name -> member classes, buckets in configured order with the
/// unassigned bucket last.
struct PackageCatalog {
  std::vector<std::pair<std::string, std::vector<ClassEntry>>> buckets;

  const std::vector<ClassEntry>* find(std::string_view package) const;
  bool operator==(const PackageCatalog&) const = default;
};

/// Subsections of every Section whose title starts with `trigger`
/// (case-sensitive). The group title is the enclosing Chapter's title, or the
/// section's parent title when there is no chapter.
std::vector<ClassEntry> extract_class_hierarchy(const structure::DocTree& tree,
                                                std::string_view trigger = kDefaultTrigger);

/// Configured package that a single reference string belongs to: the longest
/// package name the reference contains. Empty when none matches.
std::string match_package(std::string_view reference, std::span<const std::string> packages);

/// Assigns each class to the longest configured package contained in each of
/// its references. An empty `packages` list means "every distinct reference".
/// Classes without references land in the "(unassigned)" bucket.
PackageCatalog extract_package_catalog(std::span<const ClassEntry> entries, std::span<const std::string> packages);

/// `concepts/classes.html` plus one `concepts/package-<slug>.html` per
/// bucket. No pages for empty input.
std::vector<sitegen::PageSpec> render_concept_pages(std::span<const ClassEntry> classes,
                                                    const PackageCatalog& catalog);

std::string package_page_filename(std::string_view package);

}  // namespace specweb::concepts
