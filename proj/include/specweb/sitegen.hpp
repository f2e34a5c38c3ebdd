#pragma once

#include "specweb/exec.hpp"
#include "specweb/structure.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace specweb::sitegen {

using structure::Block;
using structure::DocNode;
using structure::DocTree;
using structure::HeadingKind;

inline constexpr std::string_view kTocFilename = "index.html";
inline constexpr std::string_view kStylesheetFilename = "style.css";
inline constexpr std::string_view kImageDir = "images";

struct Anchor {
  std::string id;
  std::string label;
  bool operator==(const Anchor&) const = default;
};

struct NavLinks {
  std::optional<std::string> prev;
  std::optional<std::string> next;
  std::string toc = std::string(kTocFilename);
  bool operator==(const NavLinks&) const = default;
};

enum class PageRole { Toc, Structural, Concept };

/// One output page. `filename` is relative to the site root; `body` holds
/// rendered HTML fragments (the page layout and navigation are added at
/// emission time).
struct PageSpec {
  std::string filename;
  std::string title;
  std::string number;
  HeadingKind kind = HeadingKind::Root;
  PageRole role = PageRole::Structural;
  std::vector<std::string> references;
  std::vector<std::string> body;
  std::vector<Anchor> anchors;
  NavLinks nav;
  std::size_t source_line = 0;

  bool operator==(const PageSpec&) const = default;
};

/// Where a heading lands in the site: its own page or an anchor in one.
struct HeadingTarget {
  std::string title;
  HeadingKind kind = HeadingKind::Keyword;
  std::string target;
  std::size_t source_line = 0;
  bool operator==(const HeadingTarget&) const = default;
};

struct SiteManifest {
  PageSpec toc_page;
  std::vector<PageSpec> pages;  // structural pages in document order
  std::vector<PageSpec> concept_pages;
  std::filesystem::path asset_dir;
  std::vector<HeadingTarget> targets;  // one per heading, pre-order
  std::vector<std::string> image_sources;

  std::size_t total_pages() const noexcept { return pages.size() + 1 + concept_pages.size(); }
  const PageSpec* find(std::string_view filename) const;
};

/// `<number>.html`. Throws DocError(EmptyNumber) for an empty number.
std::string page_filename(std::string_view number);

/// In-page anchor id of a keyword block, e.g. ("Notation", "7.3.1") ->
/// "notation-7.3.1".
std::string anchor_id(std::string_view label, std::string_view page_key);

/// Whether the heading gets a page of its own when it has no enclosing
/// subsection page (deep subsections are decided during pagination).
bool owns_page(const structure::HeadingEntry& heading);

std::string render_paragraph(const structure::Paragraph& p);
std::string render_figure(const structure::Figure& f);
std::string render_table(const structure::Table& t);
std::string render_list(const structure::List& l);
std::string render_block(const Block& b);

/// The table-of-contents page: nested hyperlinks to every structural page,
/// followed by content attached to the document root and links to concept
/// pages.
PageSpec render_toc(const DocTree& tree, std::span<const PageSpec> concept_pages = {});

/// One page per Part/Chapter/Section/Subsection (and Annex/Index) heading, in
/// pre-order. Keyword headings and deep subsections become anchored sections
/// of the page that encloses them. Navigation links are left empty. Throws
/// DocError(InvalidTree) if the tree does not validate.
SiteManifest paginate(const DocTree& tree, Exec exec = Exec::Parallel);

/// Sets the Previous/Next chain over consecutive pages and the ToC link on
/// every page.
SiteManifest link_pages(SiteManifest manifest);

/// Replaces the concept pages and re-renders the ToC to list them.
void attach_concept_pages(SiteManifest& manifest, const DocTree& tree, std::vector<PageSpec> concept_pages);

/// Complete, standalone XHTML-compatible document for one page.
std::string render_html(const PageSpec& page);

std::string stylesheet();

struct EmitSummary {
  std::size_t files = 0;
  std::size_t bytes = 0;
  std::vector<std::string> written;  // relative paths, sorted
  std::vector<std::string> warnings;
};

/// Writes every page, the stylesheet and the copied image directory under
/// `out_dir`. Output is byte-identical for identical input. Throws
/// DocError(IoFailure).
EmitSummary emit_site(const SiteManifest& manifest, const std::filesystem::path& out_dir,
                      Exec exec = Exec::Parallel);

}  // namespace specweb::sitegen
