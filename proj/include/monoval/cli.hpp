// Input documents, command dispatch and output serialization for the monoval tool.
//
// A document is a list of `key: value` statements, one per line, `#` starting a comment:
//
//   weights: 1, 1
//   poly: Z^3 + 3*x1*x2*Z - 2*x1^4
//   precision: 6
//   cmd: roots
#pragma once
#include "monoval/dioph.hpp"
#include "monoval/geometry.hpp"
#include "json.hpp"
#include <map>

namespace monoval {

using Json = nlohmann::ordered_json;

struct Scaling {
    TowerElem lead;        // a_d
    Rational a{1};
    std::string back_substitution;
};

struct InputDocument {
    std::string command = "roots";
    WeightsPtr weights;
    std::string weights_text;
    std::vector<std::string> variables;      // x1..xn
    std::optional<MonicPoly> poly;
    std::string poly_text;
    std::optional<Scaling> scaling;           // set when a non-monic input was rescaled
    std::optional<MonicPoly> perturb;         // second polynomial for stability
    std::optional<TowerElem> series;          // input of the gap command
    Rational precision{6};
    bool precision_given = false;
    std::uint64_t seed = 0;
    long q = 0;                               // rel: 0 picks the smallest certified q
    Rational epsilon{1, 10};
    std::optional<Rational> a_max;
    std::size_t count = 3;
    std::optional<std::size_t> budget;
    bool scale_nonmonic = false;
    std::string format = "text";
};

// statements given on the command line replace those of the document
using Overrides = std::map<std::string, std::string>;

InputDocument parse_document(const std::string& text, const Overrides& overrides = {});

struct OutputDocument {
    std::string command;
    Json json;
    std::vector<PuiseuxRoot> roots;   // kept for the round-trip check
    std::optional<std::string> svg;
};

OutputDocument run(const InputDocument& doc);

// format: text, json or svg (polygon only)
std::string serialize(const OutputDocument& out, const std::string& format);

// re-parse towers and expansions from serialized JSON and compare with out.roots;
// returns the mismatches
std::vector<std::string> roundtrip_mismatches(const OutputDocument& out, const std::string& json_text);

const std::vector<std::string>& commands();

} // namespace monoval
