// figures.hpp — tables behind the published panels, with their parameters fixed.

#pragma once

#include "fano/table.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fano {

// fig2a..fig2d, fig3a..fig3c, fig4a..fig4c, fig5, fig6.
std::span<const std::string_view> figure_ids() noexcept;

struct FigurePanel {
    std::string name; // file stem, e.g. "fig2a" or "fig5c"
    Table table;
};

// Builds every panel of a figure id. Throws Error{InvalidParameter} for an
// unknown id.
std::vector<FigurePanel> build_figure(std::string_view id, unsigned threads = 0);

// Writes <out_dir>/<panel>.csv for each panel and returns the paths.
// Throws Error{IoFailure} when the directory or a file cannot be written.
std::vector<std::filesystem::path> figure_driver(std::string_view id,
                                                 const std::filesystem::path& out_dir,
                                                 unsigned threads = 0);

} // namespace fano
