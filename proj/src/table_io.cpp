#include "lagfib/table_io.hpp"

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "lagfib/errors.hpp"

namespace lagfib {

TableFormat parse_format(const std::string& name) {
    if (name == "csv") return TableFormat::csv;
    if (name == "jsonl") return TableFormat::jsonl;
    throw DomainError("unknown output format: " + name);
}

namespace {

bool looks_numeric(const std::string& s) {
    if (s.empty()) return false;
    char* end = nullptr;
    std::strtod(s.c_str(), &end);
    return end && *end == '\0';
}

void write_json_string(std::ostream& os, const std::string& s) {
    os << '"';
    for (char c : s) {
        switch (c) {
            case '"': os << "\\\""; break;
            case '\\': os << "\\\\"; break;
            case '\n': os << "\\n"; break;
            case '\t': os << "\\t"; break;
            default: os << c;
        }
    }
    os << '"';
}

}  // namespace

void Table::write(std::ostream& os, TableFormat fmt) const {
    if (fmt == TableFormat::csv) {
        for (std::size_t c = 0; c < header.size(); ++c)
            os << (c ? "," : "") << header[c];
        os << '\n';
        for (const auto& row : rows) {
            for (std::size_t c = 0; c < row.size(); ++c)
                os << (c ? "," : "") << row[c];
            os << '\n';
        }
        return;
    }
    for (const auto& row : rows) {
        os << '{';
        for (std::size_t c = 0; c < row.size() && c < header.size(); ++c) {
            if (c) os << ',';
            write_json_string(os, header[c]);
            os << ':';
            if (looks_numeric(row[c]) && row[c] != "")
                os << row[c];
            else
                write_json_string(os, row[c]);
        }
        os << "}\n";
    }
}

void Table::write_file(const std::string& path, TableFormat fmt) const {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::trunc);
        if (!os) throw DomainError("cannot open output file: " + tmp);
        write(os, fmt);
        if (!os) throw DomainError("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace lagfib
