#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lagfib {

enum class TableFormat { csv, jsonl };

TableFormat parse_format(const std::string& name);

// Column-ordered table of preformatted cells.  Cells that look numeric are
// emitted as bare JSON numbers in jsonl mode.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void write(std::ostream& os, TableFormat fmt) const;
    // Atomic: writes a temp file next to `path`, then renames.
    void write_file(const std::string& path, TableFormat fmt) const;
};

}  // namespace lagfib
