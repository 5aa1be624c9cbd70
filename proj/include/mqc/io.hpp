#pragma once
#include <string>
#include <vector>

#include "mqc/census.hpp"
#include "mqc/radicand.hpp"

namespace mqc {

bool file_exists(const std::string& path);
std::vector<std::string> read_lines(const std::string& path);  // throws IoError
void atomic_write_file(const std::string& path, const std::string& content);

std::vector<std::string> split(const std::string& s, char sep);

// census file: "# quadratic-census B=<int> max_level=<int>" then "<r>\t<h>"
// lines sorted by |r|
void save_census(const QuadraticCensus& c, const std::string& path);
QuadraticCensus load_census(const std::string& path);

// level-set file: "# level i" sections, one radicand per line
void save_levels(const QuadraticCensus& c, const std::string& path);
std::vector<std::vector<i64>> load_levels(const std::string& path);

// one field per line: "h=<int>\tP=<int>\tneg=<r1,...>\tpos=<s1,...>",
// sorted by canonical key; h = 0 stands for "not yet known"
struct FieldLine {
    FieldRec rec;
    u64 h = 0;
};
std::string format_field_line(const FieldLine& f);
FieldLine parse_field_line(const std::string& line);
void save_field_set(std::vector<FieldLine> fields, const std::string& path);
std::vector<FieldLine> load_field_set(const std::string& path);

} // namespace mqc
