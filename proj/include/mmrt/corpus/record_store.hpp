#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mmrt/corpus/types.hpp"

namespace mmrt::corpus {

// Appends records to the line-delimited store in input order; the batch is
// written with a single buffered write so readers never see a torn record.
// One writer at a time; records are immutable once written. Returns the
// number of records written. Throws IoFailure.
std::size_t append_records(const std::string& store_path,
                           const std::vector<AttemptRecord>& records);

// Reads the whole store back. Throws IoFailure if the file cannot be opened
// or a line does not parse.
std::vector<AttemptRecord> read_records(const std::string& store_path);

// Same, but a missing file is an empty store (used for resume).
std::vector<AttemptRecord> read_records_if_exists(const std::string& store_path);

// Report-side reader: malformed lines are collected into `problems` and the
// remaining records returned.
std::vector<AttemptRecord> read_records_lenient(const std::string& store_path,
                                                std::vector<std::string>& problems);

std::string record_to_json_line(const AttemptRecord& record);
AttemptRecord record_from_json_line(const std::string& line);

}  // namespace mmrt::corpus
