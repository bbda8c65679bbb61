#include "epinet/csv.hpp"

#include <istream>

namespace epinet {
namespace csv {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    out.push_back(field);
    return out;
}

std::vector<std::vector<std::string>> read_all(std::istream& in) {
    std::vector<std::vector<std::string>> rows;
    std::string line, record;
    bool pending = false;
    auto open_quotes = [](const std::string& s) {
        int q = 0;
        for (char c : s)
            if (c == '"') ++q;
        return q % 2 == 1;
    };
    while (std::getline(in, line)) {
        if (pending) {
            record += "\n" + line;
        } else {
            record = line;
        }
        pending = open_quotes(record);
        if (pending) continue;
        if (trim(record).empty()) continue;
        rows.push_back(split_line(record));
    }
    if (pending && !trim(record).empty()) rows.push_back(split_line(record));
    return rows;
}

std::string escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

std::string join(const std::vector<std::string>& row) {
    std::string out;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += escape(row[i]);
    }
    return out;
}

}  // namespace csv
}  // namespace epinet
