#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "aiduco/scenario.hpp"

namespace aiduco {

/// t, v1..v6, vhat1..vhat6, mhat1..mhat6, tau1..tau6, lyapunov,
/// gram_min_eig, gram_max_eig
std::string csv_header();

/// One header row, then one row per sample. Numbers use the shortest
/// representation that parses back to the same double; rows without a
/// Gramian window leave the last two fields empty.
void write_csv(const SimTrace& trace, std::ostream& out);
void export_csv(const SimTrace& trace, const std::filesystem::path& path);

/// Inverse of write_csv. Throws std::runtime_error on malformed input.
SimTrace parse_csv(std::istream& in);
SimTrace read_csv(const std::filesystem::path& path);

/// Rows with from <= t <= to, keeping every `every`-th row.
SimTrace slice_trace(const SimTrace& trace, double from, double to, std::size_t every = 1);

}  // namespace aiduco
