#pragma once
// Report emission.  The report is an ordered JSON tree; numbers are written
// with 17 significant digits so output is byte-stable, complex values are
// [re, im] pairs, non-finite numbers become null.

#include <cmath>
#include <complex>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace qharm::cli {

using Json = nlohmann::ordered_json;

inline Json cjson(std::complex<double> c) { return Json::array({c.real(), c.imag()}); }

inline std::string number17(double v) {
    if (!std::isfinite(v)) return "null";
    if (v == 0) v = 0; // no negative zero
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void dump(std::ostream& os, const Json& j, int indent = 0) {
    const std::string pad(indent + 2, ' '), close(indent, ' ');
    switch (j.type()) {
    case Json::value_t::object: {
        if (j.empty()) {
            os << "{}";
            return;
        }
        os << "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) os << ",\n";
            first = false;
            os << pad << Json(it.key()).dump() << ": ";
            dump(os, it.value(), indent + 2);
        }
        os << "\n" << close << "}";
        return;
    }
    case Json::value_t::array: {
        if (j.empty()) {
            os << "[]";
            return;
        }
        // Short arrays of scalars (complex pairs, exponent vectors) stay inline.
        bool flat = j.size() <= 4;
        for (auto& e : j) flat = flat && !e.is_structured();
        if (flat) {
            os << "[";
            for (std::size_t k = 0; k < j.size(); ++k) {
                if (k) os << ", ";
                dump(os, j[k], indent);
            }
            os << "]";
            return;
        }
        os << "[\n";
        for (std::size_t k = 0; k < j.size(); ++k) {
            if (k) os << ",\n";
            os << pad;
            dump(os, j[k], indent + 2);
        }
        os << "\n" << close << "]";
        return;
    }
    case Json::value_t::number_float: os << number17(j.get<double>()); return;
    default: os << j.dump(); return;
    }
}

// CSV table: header row then values; complex cells are split into _re/_im
// columns by the producer.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

inline std::string csv_cell(const Json& v) {
    std::string s;
    if (v.is_number_float()) s = number17(v.get<double>());
    else if (v.is_string()) s = v.get<std::string>();
    else if (v.is_null()) s = "";
    else s = v.dump();
    if (s.find_first_of(",\"\n") != std::string::npos) {
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }
    return s;
}

// Rows of JSON objects with identical keys become a table; a two-element
// numeric array expands into name_re, name_im.
inline Table table_from_rows(const Json& rows) {
    Table t;
    if (!rows.is_array() || rows.empty()) return t;
    auto is_pair = [](const Json& v) { return v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number(); };
    for (auto it = rows[0].begin(); it != rows[0].end(); ++it) {
        if (is_pair(it.value())) {
            t.header.push_back(it.key() + "_re");
            t.header.push_back(it.key() + "_im");
        } else {
            t.header.push_back(it.key());
        }
    }
    for (auto& r : rows) {
        std::vector<std::string> cells;
        for (auto it = r.begin(); it != r.end(); ++it) {
            if (is_pair(it.value())) {
                cells.push_back(csv_cell(it.value()[0]));
                cells.push_back(csv_cell(it.value()[1]));
            } else {
                cells.push_back(csv_cell(it.value()));
            }
        }
        t.rows.push_back(std::move(cells));
    }
    return t;
}

// Scalar fields of an object as a one-row table.
inline Table table_from_object(const Json& obj) {
    Json row = Json::object();
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!it.value().is_structured() ||
            (it.value().is_array() && it.value().size() == 2 && it.value()[0].is_number()))
            row[it.key()] = it.value();
    return table_from_rows(Json::array({row}));
}

inline void write_csv(std::ostream& os, const Table& t) {
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t k = 0; k < cells.size(); ++k) os << (k ? "," : "") << cells[k];
        os << "\n";
    };
    line(t.header);
    for (auto& r : t.rows) line(r);
}

}  // namespace qharm::cli
