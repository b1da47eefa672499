#include "alexinv/io.hpp"

#include "alexinv/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace alexinv {

namespace {

using nlohmann::json;

json parse(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidArgument(std::string("malformed JSON: ") + e.what());
    }
}

const json& field(const json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key))
        throw InvalidArgument(std::string("missing field \"") + key + "\"");
    return obj.at(key);
}

std::size_t natural(const json& v, const char* what) {
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw InvalidArgument(std::string(what) + " must be a non-negative integer");
    return v.get<std::size_t>();
}

Rational scalar(const json& v) {
    if (v.is_number_integer())
        return Rational(v.get<long>());
    if (v.is_string())
        return parse_rational(v.get<std::string>());
    throw InvalidArgument("scalars must be integers or \"p/q\" strings");
}

} // namespace

LiePresentation parse_lie_presentation(std::string_view json_text) {
    const json doc = parse(json_text);
    const std::size_t n = natural(field(doc, "dim_v"), "dim_v");
    const json& rels = field(doc, "relations");
    if (!rels.is_array())
        throw InvalidArgument("relations must be an array");
    std::vector<std::tuple<std::size_t, std::size_t, Rational>> t;
    std::size_t row = 0;
    for (const auto& rel : rels) {
        if (!rel.is_array())
            throw InvalidArgument("each relation must be an array of terms");
        for (const auto& term : rel) {
            const std::size_t i = natural(field(term, "i"), "i");
            const std::size_t j = natural(field(term, "j"), "j");
            if (i >= j || j >= n)
                throw InvalidArgument("relation term needs 0 <= i < j < dim_v");
            t.emplace_back(row, wedge2_index(n, i, j), scalar(field(term, "c")));
        }
        ++row;
    }
    return LiePresentation(n, SparseMatrix<Rational>::from_triplets(row, wedge2_dim(n), std::move(t)));
}

GroupPresentation parse_group_presentation(std::string_view json_text) {
    const json doc = parse(json_text);
    const std::size_t n = natural(field(doc, "generators"), "generators");
    const json& rels = field(doc, "relators");
    if (!rels.is_array())
        throw InvalidArgument("relators must be an array");
    std::vector<Word> words;
    for (const auto& r : rels) {
        if (!r.is_array())
            throw InvalidArgument("each relator must be an array of letters");
        Word w;
        for (const auto& a : r) {
            if (!a.is_number_integer())
                throw InvalidArgument("letters must be integers");
            w.push_back(a.get<int>());
        }
        words.push_back(std::move(w));
    }
    return GroupPresentation(n, std::move(words));
}

MatrixFamily parse_matrix_family(std::string_view json_text) {
    const json doc = parse(json_text);
    MatrixFamily out;
    if (doc.is_object() && doc.contains("kind")) {
        const auto kind = doc.at("kind");
        if (kind == "laurent")
            out.laurent = true;
        else if (kind == "sym")
            out.laurent = false;
        else
            throw InvalidArgument("kind must be \"laurent\" or \"sym\"");
    }
    out.dimension = natural(field(doc, "dimension"), "dimension");
    const json& mats = field(doc, "matrices");
    if (!mats.is_array())
        throw InvalidArgument("matrices must be an array");
    for (const auto& m : mats) {
        if (!m.is_array() || m.size() != out.dimension)
            throw InvalidArgument("each matrix needs " + std::to_string(out.dimension) + " rows");
        std::vector<std::vector<Rational>> rows;
        for (const auto& r : m) {
            if (!r.is_array() || r.size() != out.dimension)
                throw InvalidArgument("each row needs " + std::to_string(out.dimension) + " entries");
            std::vector<Rational> row;
            for (const auto& x : r)
                row.push_back(scalar(x));
            rows.push_back(std::move(row));
        }
        out.matrices.push_back(SparseMatrix<Rational>::from_dense(rows, out.dimension));
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InvalidArgument("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace alexinv
