#include "mqc/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sys/stat.h>

#include "mqc/errors.hpp"

namespace mqc {

bool file_exists(const std::string& path) {
    struct stat st;
    return ::stat(path.c_str(), &st) == 0;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

void atomic_write_file(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp);
        out << content;
        if (!out.flush()) throw IoError("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw IoError("cannot rename " + tmp + " to " + path);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        size_t at = s.find(sep, start);
        if (at == std::string::npos) {
            parts.push_back(s.substr(start));
            return parts;
        }
        parts.push_back(s.substr(start, at - start));
        start = at + 1;
    }
}

void save_census(const QuadraticCensus& c, const std::string& path) {
    std::string out = "# quadratic-census B=" + std::to_string(c.bound) +
                      " max_level=" + std::to_string(c.max_level) + "\n";
    for (auto& [r, h] : c.entries) {
        out += std::to_string(r);
        out += '\t';
        out += std::to_string(h);
        out += '\n';
    }
    atomic_write_file(path, out);
}

QuadraticCensus load_census(const std::string& path) {
    auto lines = read_lines(path);
    if (lines.empty() || lines[0].rfind("# quadratic-census ", 0) != 0)
        throw IoError("missing census header in " + path);
    QuadraticCensus c;
    {
        auto words = split(lines[0], ' ');
        for (const auto& w : words) {
            if (w.rfind("B=", 0) == 0) c.bound = std::stoll(w.substr(2));
            if (w.rfind("max_level=", 0) == 0) c.max_level = std::stoi(w.substr(10));
        }
        if (c.bound < 4) throw IoError("bad census header in " + path);
    }
    for (size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        auto tab = lines[i].find('\t');
        if (tab == std::string::npos) throw IoError("bad census line: " + lines[i]);
        c.entries.emplace_back(std::stoll(lines[i].substr(0, tab)),
                               std::stoull(lines[i].substr(tab + 1)));
    }
    c.h_by_radicand.reserve(c.entries.size() * 2);
    c.levels.assign(static_cast<size_t>(c.max_level) + 1, {});
    for (auto& [r, h] : c.entries) {
        c.h_by_radicand.emplace(r, h);
        if ((h & (h - 1)) == 0) {
            int lvl = 0;
            for (u64 v = h; v > 1; v >>= 1) ++lvl;
            if (lvl <= c.max_level) c.levels[static_cast<size_t>(lvl)].push_back(r);
        }
    }
    return c;
}

void save_levels(const QuadraticCensus& c, const std::string& path) {
    std::string out;
    for (size_t i = 0; i < c.levels.size(); ++i) {
        out += "# level " + std::to_string(i) + "\n";
        for (i64 r : c.levels[i]) out += std::to_string(r) + "\n";
    }
    atomic_write_file(path, out);
}

std::vector<std::vector<i64>> load_levels(const std::string& path) {
    std::vector<std::vector<i64>> levels;
    for (const auto& line : read_lines(path)) {
        if (line.empty()) continue;
        if (line.rfind("# level ", 0) == 0) {
            size_t idx = static_cast<size_t>(std::stoi(line.substr(8)));
            if (idx != levels.size()) throw IoError("level sections out of order in " + path);
            levels.emplace_back();
            continue;
        }
        if (levels.empty()) throw IoError("radicand before any level header in " + path);
        levels.back().push_back(std::stoll(line));
    }
    return levels;
}

std::string format_field_line(const FieldLine& f) {
    std::string s = "h=" + std::to_string(f.h);
    s += "\tP=" + std::to_string(u64{1} << f.rec.p_exp);
    s += "\tneg=" + radicand_list_to_string(f.rec.neg);
    s += "\tpos=" + radicand_list_to_string(f.rec.pos);
    return s;
}

FieldLine parse_field_line(const std::string& line) {
    auto cols = split(line, '\t');
    if (cols.size() != 4) throw IoError("bad field line: " + line);
    auto want = [&](size_t i, const char* key) -> std::string {
        std::string prefix = std::string(key) + "=";
        if (cols[i].rfind(prefix, 0) != 0) throw IoError("bad field line: " + line);
        return cols[i].substr(prefix.size());
    };
    FieldLine f;
    f.h = std::stoull(want(0, "h"));
    u64 p = std::stoull(want(1, "P"));
    if (p == 0 || (p & (p - 1))) throw IoError("P not a power of two: " + line);
    f.rec.p_exp = 0;
    for (u64 v = p; v > 1; v >>= 1) ++f.rec.p_exp;
    f.rec.neg = parse_radicand_list(want(2, "neg"));
    f.rec.pos = parse_radicand_list(want(3, "pos"));
    return f;
}

void save_field_set(std::vector<FieldLine> fields, const std::string& path) {
    std::sort(fields.begin(), fields.end(), [](const FieldLine& a, const FieldLine& b) {
        return canonical_key(a.rec.neg) < canonical_key(b.rec.neg);
    });
    std::string out;
    for (const auto& f : fields) {
        out += format_field_line(f);
        out += '\n';
    }
    atomic_write_file(path, out);
}

std::vector<FieldLine> load_field_set(const std::string& path) {
    std::vector<FieldLine> fields;
    for (const auto& line : read_lines(path)) {
        if (line.empty() || line[0] == '#') continue;
        fields.push_back(parse_field_line(line));
    }
    return fields;
}

} // namespace mqc
