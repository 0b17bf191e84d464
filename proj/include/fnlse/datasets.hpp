#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "fnlse/jm.hpp"

namespace fnlse {

/// The six benchmark failure data sets shipped with the library.
enum class DatasetId { NTDS, JDM1, JDM2, JDM3, JDM4, ATT };

std::span<const DatasetId> all_datasets();

/// Embedded data, transcribed verbatim.
FailureDataset builtin(DatasetId id);

/// "ntds", "jdm1", ..., "att".
std::string_view id_name(DatasetId id);
/// "NTDS", "JDM-I", ..., "AT&T".
std::string_view display_name(DatasetId id);
/// Case-insensitive; also accepts the display names.
std::optional<DatasetId> parse_dataset_id(std::string_view text);

enum class FileFormat { Plain, Csv };

/// Plain: whitespace-separated positive decimals. Csv: rows of index,time
/// with an optional header (a first row that does not parse as numbers).
/// Throws ParseError (with line / entry number) or DomainError for a
/// non-positive time.
FailureDataset parse_failure_times(std::string_view text, FileFormat format,
                                   std::string name);

/// Reads a file; name is the file stem, unit "unspecified".
FailureDataset load(const std::filesystem::path& path, FileFormat format);

/// .csv -> Csv, anything else -> Plain.
FileFormat format_for(const std::filesystem::path& path);

/// Plain format, one value per line, shortest round-trip representation.
void write_plain(std::ostream& out, const FailureDataset& data);

}  // namespace fnlse
