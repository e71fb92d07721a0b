#include "wyskew/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wyskew::io {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void dump_value(const ordered_json &value, std::string &out, int depth) {
    const std::string pad(2 * static_cast<std::size_t>(depth), ' ');
    switch (value.type()) {
        case ordered_json::value_t::object: {
            if (value.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            std::size_t count = 0;
            for (const auto &[key, item] : value.items()) {
                out += pad + "  " + json(key).dump() + ": ";
                dump_value(item, out, depth + 1);
                if (++count < value.size()) out += ",";
                out += "\n";
            }
            out += pad + "}";
            return;
        }
        case ordered_json::value_t::array: {
            if (value.empty()) {
                out += "[]";
                return;
            }
            // Scalar-only arrays stay on one line; nested ones get one row each.
            bool nested = false;
            for (const auto &item : value) nested = nested || item.is_structured();
            if (!nested) {
                out += "[";
                for (std::size_t i = 0; i < value.size(); ++i) {
                    if (i) out += ", ";
                    dump_value(value[i], out, depth);
                }
                out += "]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < value.size(); ++i) {
                out += pad + "  ";
                dump_value(value[i], out, depth + 1);
                if (i + 1 < value.size()) out += ",";
                out += "\n";
            }
            out += pad + "]";
            return;
        }
        case ordered_json::value_t::number_float: {
            out += format_double(value.get<double>());
            return;
        }
        default:
            out += value.dump();
            return;
    }
}

std::vector<double> parse_real_list(const json &doc, const char *key, std::size_t expected,
                                    bool required) {
    if (!doc.contains(key)) {
        if (required) throw std::runtime_error(std::string("missing field: ") + key);
        return std::vector<double>(expected, 0.0);
    }
    const json &list = doc.at(key);
    if (!list.is_array()) throw std::runtime_error(std::string(key) + " must be an array");
    if (list.size() != expected) {
        std::ostringstream msg;
        msg << key << " has " << list.size() << " entries, expected " << expected;
        throw std::runtime_error(msg.str());
    }
    std::vector<double> out;
    out.reserve(expected);
    for (const json &v : list) {
        if (!v.is_number()) throw std::runtime_error(std::string(key) + " must hold numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<std::vector<double>> parse_real_grid(const json &doc, const char *key,
                                                 std::size_t dim, bool required) {
    if (!doc.contains(key)) {
        if (required) throw std::runtime_error(std::string("missing field: ") + key);
        return std::vector<std::vector<double>>(dim, std::vector<double>(dim, 0.0));
    }
    const json &grid = doc.at(key);
    if (!grid.is_array() || grid.size() != dim)
        throw std::runtime_error(std::string(key) + " must be a dim x dim grid");
    std::vector<std::vector<double>> out;
    out.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const json &row = grid.at(i);
        if (!row.is_array() || row.size() != dim)
            throw std::runtime_error(std::string(key) + " must be a dim x dim grid");
        std::vector<double> r;
        r.reserve(dim);
        for (const json &v : row) {
            if (!v.is_number()) throw std::runtime_error(std::string(key) + " must hold numbers");
            r.push_back(v.get<double>());
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace

std::string format_double(double value) {
    if (!std::isfinite(value)) throw std::runtime_error("cannot serialize non-finite number");
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string dump_json(const ordered_json &doc) {
    std::string out;
    dump_value(doc, out, 0);
    out += "\n";
    return out;
}

void require_schema(const json &doc, const std::string &context) {
    if (!doc.is_object()) throw std::runtime_error(context + ": expected a JSON object");
    if (doc.contains("schema") && doc.at("schema") != kSchemaTag)
        throw std::runtime_error(context + ": unsupported schema tag " + doc.at("schema").dump());
}

PureState parse_state_file(const std::string &text, std::string *warning) {
    const json doc = json::parse(text);
    require_schema(doc, "state file");
    if (!doc.contains("local_dims")) throw std::runtime_error("state file: missing local_dims");

    std::vector<std::size_t> dims;
    for (const json &d : doc.at("local_dims")) {
        if (!d.is_number_unsigned() || d.get<std::size_t>() == 0)
            throw std::runtime_error("state file: local_dims must be positive integers");
        dims.push_back(d.get<std::size_t>());
    }
    std::size_t total = 1;
    for (std::size_t d : dims) total *= d;

    const std::vector<double> re = parse_real_list(doc, "amplitudes_re", total, true);
    const std::vector<double> im = parse_real_list(doc, "amplitudes_im", total, false);
    std::vector<Complex> amps(total);
    for (std::size_t i = 0; i < total; ++i) amps[i] = Complex(re[i], im[i]);

    const bool normalize = doc.value("normalize", true);
    double norm2 = 0.0;
    for (const Complex &a : amps) norm2 += std::norm(a);
    if (warning && normalize && std::abs(norm2 - 1.0) > 1e-9) {
        std::ostringstream msg;
        msg << "state file norm deviates from 1 by " << std::abs(norm2 - 1.0)
            << "; amplitudes were rescaled";
        *warning = msg.str();
    }

    return PureState(std::move(dims), std::move(amps),
                     normalize ? PureState::Normalization::normalize
                               : PureState::Normalization::strict);
}

PureState load_state_file(const std::filesystem::path &path, std::string *warning) {
    try {
        return parse_state_file(load_text(path), warning);
    } catch (const std::exception &e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

ordered_json state_file_json(const PureState &psi) {
    ordered_json doc;
    doc["schema"] = kSchemaTag;
    doc["local_dims"] = psi.local_dims();
    ordered_json re = ordered_json::array();
    ordered_json im = ordered_json::array();
    bool any_imag = false;
    for (const Complex &a : psi.amplitudes()) {
        re.push_back(a.real());
        im.push_back(a.imag());
        any_imag = any_imag || a.imag() != 0.0;
    }
    doc["amplitudes_re"] = std::move(re);
    if (any_imag) doc["amplitudes_im"] = std::move(im);
    doc["normalize"] = true;
    return doc;
}

std::string write_state_file(const PureState &psi) { return dump_json(state_file_json(psi)); }

HermitianMatrix parse_observable_file(const std::string &text) {
    const json doc = json::parse(text);
    require_schema(doc, "observable file");
    if (!doc.contains("dim") || !doc.at("dim").is_number_unsigned() ||
        doc.at("dim").get<std::size_t>() == 0)
        throw std::runtime_error("observable file: dim must be a positive integer");
    const std::size_t dim = doc.at("dim").get<std::size_t>();

    const auto re = parse_real_grid(doc, "entries_re", dim, true);
    const auto im = parse_real_grid(doc, "entries_im", dim, false);

    ComplexMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) m(i, j) = Complex(re[i][j], im[i][j]);

    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            if (std::abs(m(i, j) - std::conj(m(j, i))) > 1e-12) {
                std::ostringstream msg;
                msg << "observable file: entries not Hermitian at (" << i << ", " << j << ")";
                throw std::runtime_error(msg.str());
            }
        }
    }
    return HermitianMatrix::symmetrized(m);
}

HermitianMatrix load_observable_file(const std::filesystem::path &path) {
    try {
        return parse_observable_file(load_text(path));
    } catch (const std::exception &e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

ordered_json observable_file_json(const HermitianMatrix &k) {
    ordered_json doc;
    doc["schema"] = kSchemaTag;
    doc["dim"] = k.dim();
    ordered_json re = ordered_json::array();
    ordered_json im = ordered_json::array();
    bool any_imag = false;
    for (std::size_t i = 0; i < k.dim(); ++i) {
        ordered_json re_row = ordered_json::array();
        ordered_json im_row = ordered_json::array();
        for (std::size_t j = 0; j < k.dim(); ++j) {
            re_row.push_back(k(i, j).real());
            im_row.push_back(k(i, j).imag());
            any_imag = any_imag || k(i, j).imag() != 0.0;
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    doc["entries_re"] = std::move(re);
    if (any_imag) doc["entries_im"] = std::move(im);
    return doc;
}

std::string write_observable_file(const HermitianMatrix &k) {
    return dump_json(observable_file_json(k));
}

void save_text(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string load_text(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace wyskew::io
