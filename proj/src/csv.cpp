#include "dtasa/csv.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "dtasa/errors.hpp"

namespace dtasa {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        // trim surrounding whitespace
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

long parse_count(const std::string& s, int row, const std::string& col) {
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(s, &pos);
    } catch (...) {
        throw CsvError("row " + std::to_string(row) + ": column '" + col +
                       "' is not an integer: '" + s + "'");
    }
    if (pos != s.size() || v < 0) {
        throw CsvError("row " + std::to_string(row) + ": column '" + col +
                       "' must be a non-negative integer: '" + s + "'");
    }
    return v;
}

} // namespace

std::vector<DiagnosticStudy> read_studies_csv(std::istream& in) {
    std::string line;
    // header
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        header = split_csv_line(line);
        break;
    }
    if (header.empty()) throw CsvError("empty input: header 'id,tp,fn,tn,fp' required");

    const std::vector<std::string> required{"id", "tp", "fn", "tn", "fp"};
    std::vector<std::size_t> col(required.size());
    for (std::size_t i = 0; i < required.size(); ++i) {
        const auto it = std::find(header.begin(), header.end(), required[i]);
        if (it == header.end()) throw CsvError("missing column: " + required[i]);
        col[i] = static_cast<std::size_t>(it - header.begin());
    }

    std::vector<DiagnosticStudy> studies;
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line[0] == '#') continue;
        const auto cells = split_csv_line(line);
        if (cells.size() < header.size()) {
            throw CsvError("row " + std::to_string(row) + ": expected " +
                           std::to_string(header.size()) + " cells, got " +
                           std::to_string(cells.size()));
        }
        DiagnosticStudy s;
        s.id = cells[col[0]];
        s.tp = static_cast<double>(parse_count(cells[col[1]], row, "tp"));
        s.fn_ = static_cast<double>(parse_count(cells[col[2]], row, "fn"));
        s.tn = static_cast<double>(parse_count(cells[col[3]], row, "tn"));
        s.fp = static_cast<double>(parse_count(cells[col[4]], row, "fp"));
        if (s.diseased() < 1 || s.non_diseased() < 1) {
            throw CsvError("row " + std::to_string(row) +
                           ": study needs at least one diseased and one non-diseased subject");
        }
        studies.push_back(std::move(s));
    }
    return studies;
}

std::vector<DiagnosticStudy> read_studies_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CsvError("cannot open file: " + path);
    return read_studies_csv(in);
}

} // namespace dtasa
