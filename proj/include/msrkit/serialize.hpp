#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "msrkit/matchings.hpp"
#include "msrkit/msr.hpp"
#include "msrkit/qselect.hpp"

namespace msrkit {

using json = nlohmann::json;

// ---- field ----

inline json field_to_json(const Field& f) {
    return json{{"p", f.p()}, {"k", f.k()}, {"modulus", f.modulus()}};
}

inline FieldPtr field_from_json(const json& j) {
    if (!j.is_object() || !j.contains("p") || !j.contains("k"))
        throw MalformedInput("field object needs p and k");
    FieldPtr f = Field::make(j.at("p").get<int>(), j.at("k").get<int>());
    if (j.contains("modulus") && !j.at("modulus").get<std::vector<int>>().empty() &&
        j.at("modulus").get<std::vector<int>>() != f->modulus())
        throw MalformedInput("modulus does not match the built-in table");
    return f;
}

// ---- hex columns (canonical element encoding, fixed digit width per q) ----

inline int hex_width(int q) { return q <= 16 ? 1 : q <= 256 ? 2 : 3; }

inline std::string column_to_hex(const std::vector<felt_t>& col, int q) {
    static const char* digits = "0123456789abcdef";
    const int w = hex_width(q);
    std::string out;
    out.reserve(col.size() * w);
    for (felt_t v : col)
        for (int i = w - 1; i >= 0; --i) out.push_back(digits[(v >> (4 * i)) & 0xf]);
    return out;
}

inline std::vector<felt_t> column_from_hex(const std::string& hex, int q) {
    const int w = hex_width(q);
    if (hex.size() % w != 0) throw MalformedInput("hex column has wrong length");
    std::vector<felt_t> out(hex.size() / w, 0);
    for (size_t i = 0; i < out.size(); ++i) {
        int v = 0;
        for (int t = 0; t < w; ++t) {
            char c = hex[i * w + t];
            int d = c >= '0' && c <= '9' ? c - '0' : c >= 'a' && c <= 'f' ? c - 'a' + 10 : -1;
            if (d < 0) throw MalformedInput("bad hex digit");
            v = v * 16 + d;
        }
        if (v >= q) throw MalformedInput("hex symbol out of field range");
        out[i] = felt_t(v);
    }
    return out;
}

// ---- matrices and subspaces as row-major integer grids ----

inline json mat_to_json(const Mat& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(int(m.at(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Mat mat_from_json(const FieldPtr& f, const json& j) {
    if (!j.is_array() || j.empty() || !j.front().is_array())
        throw MalformedInput("matrix must be a non-empty grid");
    const int rows = int(j.size());
    const int cols = int(j.front().size());
    Mat m(f, rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (int(j[r].size()) != cols) throw MalformedInput("ragged matrix rows");
        for (int c = 0; c < cols; ++c) {
            int v = j[r][c].get<int>();
            if (v < 0 || v >= f->q()) throw MalformedInput("matrix entry out of field range");
            m.at(r, c) = felt_t(v);
        }
    }
    return m;
}

// ---- matchings ----

inline json matching_to_json(const Matching& m) {
    return json{{"r", m.r}, {"ell", m.ell}, {"colors", m.colors}};
}

inline Matching matching_from_json(const json& j) {
    Matching m;
    m.r = j.at("r").get<int>();
    m.ell = j.at("ell").get<int>();
    m.colors = j.at("colors").get<std::vector<std::vector<int>>>();
    if (!matching_is_valid(m)) throw MalformedInput("color lists do not form a matching");
    return m;
}

// ---- (A,S)-sets ----

inline json aset_to_json(const ASSet& set) {
    json pairs = json::array();
    for (const auto& pr : set.pairs)
        pairs.push_back(json{{"A", mat_to_json(pr.a)},
                             {"S", mat_to_json(pr.s.basis())},
                             {"label", json{{"matching", pr.label.matching}, {"color", pr.label.color}}}});
    json out{{"variant", set.variant}, {"m", set.m},        {"r", set.r},
             {"ell", set.ell},         {"k", set.k()},      {"field", field_to_json(*set.field)},
             {"pairs", std::move(pairs)}};
    if (set.h) {
        out["h"] = int(*set.h);
        out["lambda_base"] = json::array();
        for (felt_t v : set.lambda_base) out["lambda_base"].push_back(int(v));
    }
    return out;
}

inline ASSet aset_from_json(const json& j) {
    ASSet set;
    try {
        set.field = field_from_json(j.at("field"));
        set.variant = j.at("variant").get<std::string>();
        set.m = j.at("m").get<int>();
        set.r = j.at("r").get<int>();
        set.ell = j.at("ell").get<int>();
        for (const auto& p : j.at("pairs")) {
            ASPair pr;
            pr.a = mat_from_json(set.field, p.at("A"));
            pr.s = Subspace::span(mat_from_json(set.field, p.at("S")));
            pr.label.matching = p.at("label").at("matching").get<int>();
            pr.label.color = p.at("label").at("color").get<int>();
            set.pairs.push_back(std::move(pr));
        }
        if (j.contains("h")) {
            set.h = felt_t(j.at("h").get<int>());
            for (int v : j.at("lambda_base").get<std::vector<int>>()) set.lambda_base.push_back(felt_t(v));
        }
    } catch (const json::exception& e) {
        throw MalformedInput(std::string("bad code-spec file: ") + e.what());
    }
    if (set.r < 1 || set.ell % set.r != 0) throw MalformedInput("r must divide ell");
    if (set.pairs.empty()) throw MalformedInput("code spec has no pairs");
    for (const auto& pr : set.pairs) {
        if (pr.a.rows() != set.ell || pr.a.cols() != set.ell)
            throw MalformedInput("matrix shape does not match ell");
        if (pr.s.ambient() != set.ell || pr.s.dim() != set.ell / set.r)
            throw MalformedInput("subspace must have dimension ell / r");
    }
    return set;
}

// ---- certificates ----

inline json certificate_to_json(const Certificate& cert) {
    json independence = json::array();
    for (bool b : cert.independence) independence.push_back(b);
    json invariance = json::array();
    for (const auto& [i, j, ok] : cert.invariance)
        invariance.push_back(json{{"i", i + 1}, {"j", j + 1}, {"ok", ok}});
    json nonsingular = json::array();
    for (const auto& c : cert.nonsingular) nonsingular.push_back(json{{"check", c.desc}, {"ok", c.ok}});
    json access = json::array();
    for (bool b : cert.access_optimal) access.push_back(b);
    json inter = json::array();
    for (const auto& a : cert.intersections)
        inter.push_back(json{{"i", a.i + 1},
                             {"j", a.j + 1},
                             {"dim", a.dim},
                             {"cross_matching", a.cross_matching},
                             {"expected", a.expected},
                             {"ok", a.ok}});
    // timing stays console-only: serialized certificates are byte-identical
    // across identical runs
    return json{{"passed", cert.passed},
                {"independence", std::move(independence)},
                {"invariance", std::move(invariance)},
                {"nonsingular", std::move(nonsingular)},
                {"access_optimal", std::move(access)},
                {"intersections", std::move(inter)}};
}

// ---- node arrays and transcripts ----

inline json node_array_to_json(const NodeArray& store) {
    json cols = json::array();
    for (const auto& c : store.columns) cols.push_back(column_to_hex(c, store.field->q()));
    return json{{"field", field_to_json(*store.field)}, {"ell", store.ell}, {"columns", std::move(cols)}};
}

inline NodeArray node_array_from_json(const json& j) {
    NodeArray store;
    try {
        store.field = field_from_json(j.at("field"));
        store.ell = j.at("ell").get<int>();
        for (const auto& c : j.at("columns")) {
            store.columns.push_back(column_from_hex(c.get<std::string>(), store.field->q()));
            if (int(store.columns.back().size()) != store.ell)
                throw MalformedInput("column length does not match ell");
        }
    } catch (const json::exception& e) {
        throw MalformedInput(std::string("bad node-array file: ") + e.what());
    }
    return store;
}

inline json transcript_to_json(const RepairTranscript& tr, int q) {
    json payloads = json::array();
    for (const auto& [node, payload] : tr.payloads)
        payloads.push_back(json{{"node", node}, {"payload", column_to_hex(payload, q)}});
    json accessed = json::array();
    for (const auto& [node, count] : tr.symbols_accessed)
        accessed.push_back(json{{"node", node}, {"accessed", count}});
    return json{{"failed", tr.failed},
                {"projector", mat_to_json(tr.projector)},
                {"payloads", std::move(payloads)},
                {"symbols_sent", tr.symbols_sent},
                {"symbols_accessed", std::move(accessed)},
                {"recovered", column_to_hex(tr.recovered, q)}};
}

// ---- files ----

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw MalformedInput(std::string("cannot parse ") + path + ": " + e.what());
    }
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << j.dump(2) << "\n";
}

} // namespace msrkit
