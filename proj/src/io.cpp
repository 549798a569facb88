#include "hopfstab/io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace hopfstab {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON");
    if (!j.is_object()) throw ParseError("top-level JSON value must be an object");
    return j;
}

std::vector<std::string> string_list(const json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
    std::vector<std::string> out;
    for (const auto& e : j) {
        if (!e.is_string()) throw ParseError(std::string(what) + " entries must be strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

IntMat int_grid(const json& j, size_t rows, size_t cols, const char* what) {
    if (!j.is_array() || j.size() != rows)
        throw ParseError(std::string(what) + " must have " + std::to_string(rows) + " rows");
    IntMat m(rows, cols);
    for (size_t i = 0; i < rows; ++i) {
        const auto& row = j[i];
        if (!row.is_array() || row.size() != cols)
            throw ParseError(std::string(what) + " row " + std::to_string(i) + " must have " +
                             std::to_string(cols) + " entries");
        for (size_t c = 0; c < cols; ++c) {
            if (!row[c].is_number_integer())
                throw ParseError(std::string(what) + " entries must be integers");
            m.at(i, c) = mpz_class(static_cast<long>(row[c].get<long long>()));
        }
    }
    return m;
}

json grid_json(const IntMat& m) {
    json rows = json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (size_t j2 = 0; j2 < m.cols(); ++j2) row.push_back(m.at(i, j2).get_si());
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

SAC sac_from_json(const std::string& text) {
    json j = parse(text);
    CoeffRing ring = CoeffRing::integers();
    if (j.contains("ring")) {
        const auto& r = j.at("ring");
        if (!r.is_object() || !r.contains("kind") || !r.at("kind").is_string())
            throw ParseError("ring must be an object with a string kind");
        std::string kind = r.at("kind").get<std::string>();
        if (kind == "Z") {
            ring = CoeffRing::integers();
        } else if (kind == "Zmod") {
            if (!r.contains("n") || !r.at("n").is_number_integer() || r.at("n").get<long long>() < 1)
                throw ParseError("Zmod ring needs a positive integer n");
            ring = CoeffRing::integers_mod(r.at("n").get<long long>());
        } else {
            throw ParseError("unknown ring kind: " + kind);
        }
    }
    SAC x = SAC::empty(ring);
    for (const char* key : {"plus", "circ", "minus"})
        if (!j.contains(key)) throw ParseError(std::string("missing cell list: ") + key);
    x.plus = string_list(j.at("plus"), "plus");
    x.circ = string_list(j.at("circ"), "circ");
    x.minus = string_list(j.at("minus"), "minus");
    x.I_plus = j.contains("I_plus")
                   ? int_grid(j.at("I_plus"), x.plus.size(), x.circ.size(), "I_plus")
                   : IntMat(x.plus.size(), x.circ.size());
    x.I_minus = j.contains("I_minus")
                    ? int_grid(j.at("I_minus"), x.circ.size(), x.minus.size(), "I_minus")
                    : IntMat(x.circ.size(), x.minus.size());
    return x;
}

std::string sac_to_json(const SAC& x) {
    json j;
    if (x.ring.is_integers)
        j["ring"] = {{"kind", "Z"}};
    else
        j["ring"] = {{"kind", "Zmod"}, {"n", x.ring.n}};
    j["plus"] = x.plus;
    j["circ"] = x.circ;
    j["minus"] = x.minus;
    j["I_plus"] = grid_json(x.I_plus);
    j["I_minus"] = grid_json(x.I_minus);
    return j.dump(2);
}

CWComplex cw_from_json(const std::string& text) {
    json j = parse(text);
    if (!j.contains("cells") || !j.at("cells").is_object())
        throw ParseError("cells must be an object keyed by dimension");
    CWComplex k;
    for (const auto& [key, value] : j.at("cells").items()) {
        int q;
        try {
            size_t pos = 0;
            q = std::stoi(key, &pos);
            if (pos != key.size() || q < 0) throw std::invalid_argument(key);
        } catch (const std::exception&) {
            throw ParseError("cell dimensions must be nonnegative integers: " + key);
        }
        k.cells[q] = string_list(value, ("cells[" + key + "]").c_str());
    }
    if (j.contains("incidence")) {
        if (!j.at("incidence").is_object())
            throw ParseError("incidence must be an object keyed by dimension");
        for (const auto& [key, value] : j.at("incidence").items()) {
            int q;
            try {
                size_t pos = 0;
                q = std::stoi(key, &pos);
                if (pos != key.size() || q < 1) throw std::invalid_argument(key);
            } catch (const std::exception&) {
                throw ParseError("incidence dimensions must be positive integers: " + key);
            }
            k.incidence[q] =
                int_grid(value, k.count(q - 1), k.count(q), ("incidence[" + key + "]").c_str());
        }
    }
    if (!j.contains("basepoint") || !j.at("basepoint").is_string())
        throw ParseError("basepoint must be a 0-cell label");
    k.basepoint = j.at("basepoint").get<std::string>();
    return k;
}

std::string cw_to_json(const CWComplex& k) {
    json cells = json::object(), inc = json::object();
    for (const auto& [q, labels] : k.cells) cells[std::to_string(q)] = labels;
    for (const auto& [q, m] : k.incidence) inc[std::to_string(q)] = grid_json(m);
    json j;
    j["cells"] = std::move(cells);
    j["incidence"] = std::move(inc);
    j["basepoint"] = k.basepoint;
    return j.dump(2);
}

SimplicialSurface surface_from_json(const std::string& text) {
    json j = parse(text);
    if (!j.contains("vertices") || !j.contains("triangles"))
        throw ParseError("surface needs vertices and triangles");
    SimplicialSurface s;
    s.vertices = string_list(j.at("vertices"), "vertices");
    if (!j.at("triangles").is_array()) throw ParseError("triangles must be an array");
    for (const auto& t : j.at("triangles")) {
        if (!t.is_array() || t.size() != 3)
            throw ParseError("each triangle must list three vertex indices");
        std::array<size_t, 3> tri{};
        for (size_t i = 0; i < 3; ++i) {
            if (!t[i].is_number_integer() || t[i].get<long long>() < 0 ||
                static_cast<size_t>(t[i].get<long long>()) >= s.vertices.size())
                throw ParseError("triangle vertex index out of range");
            tri[i] = static_cast<size_t>(t[i].get<long long>());
        }
        s.triangles.push_back(tri);
    }
    return s;
}

InputKind classify_json(const std::string& text) {
    json j = parse(text);
    if (j.contains("plus")) return InputKind::Sac;
    if (j.contains("cells")) return InputKind::Cw;
    if (j.contains("vertices")) return InputKind::Surface;
    throw ParseError("unrecognized input: expected plus/circ/minus, cells, or vertices");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace hopfstab
