#ifndef DTASA_CSV_HPP
#define DTASA_CSV_HPP

#include <istream>
#include <string>
#include <vector>

#include "dtasa/study.hpp"

namespace dtasa {

// Reads the `id,tp,fn,tn,fp` study table. Header required, integer cells,
// lines starting with '#' ignored. Throws CsvError with the offending row
// or column named.
std::vector<DiagnosticStudy> read_studies_csv(std::istream& in);
std::vector<DiagnosticStudy> read_studies_csv_file(const std::string& path);

} // namespace dtasa

#endif
