#include "CLI11.hpp"
#include "monoval/cli.hpp"
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

using namespace monoval;

namespace {

struct Outcome {
    int code = 0;
    std::string text, error;
};

Outcome process(const std::string& source, const std::string& text, const Overrides& ov) {
    Outcome o;
    try {
        InputDocument doc = parse_document(text, ov);
        o.text = serialize(run(doc), doc.format);
    } catch (const ParseError& e) {
        o = {2, "", "parse error: " + std::string(e.what())};
    } catch (const DomainError& e) {
        o = {3, "", "error: " + std::string(e.what())};
    } catch (const BudgetExhausted& e) {
        o = {4, "", "budget exhausted: " + std::string(e.what())};
    }
    if (o.code) o.error = source + ": " + o.error;
    return o;
}

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream s;
        s << std::cin.rdbuf();
        return s.str();
    }
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Roots of monic polynomials over power series with a monomial valuation"};
    std::string cmd, precision, seed, format, weights, budget;
    bool scale = false, batch = false;
    std::vector<std::string> files;
    app.add_option("--cmd", cmd, "roots, polygon, qo-check, aj, rel, stability, gap or disc");
    app.add_option("--precision", precision, "truncation degree (rational)");
    app.add_option("--seed", seed, "seed for randomized choices");
    app.add_option("--format", format, "text, json or svg");
    app.add_option("--weights", weights, "weight specification, e.g. \"1,2\" or \"1, sqrt2\"");
    app.add_option("--budget", budget, "work budget");
    app.add_flag("--scale-nonmonic", scale, "rescale a non-monic polynomial to a monic one");
    app.add_flag("--batch", batch, "process several documents concurrently");
    app.add_option("files", files, "input documents; stdin when absent");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int r = app.exit(e);
        return r == 0 ? 0 : 2;
    }

    Overrides ov;
    if (!cmd.empty()) ov["cmd"] = cmd;
    if (!precision.empty()) ov["precision"] = precision;
    if (!seed.empty()) ov["seed"] = seed;
    if (!format.empty()) ov["format"] = format;
    if (!weights.empty()) ov["weights"] = weights;
    if (!budget.empty()) ov["budget"] = budget;
    if (scale) ov["scale-nonmonic"] = "true";

    if (files.empty()) files.push_back("-");
    if (files.size() > 1 && !batch) {
        std::cerr << "several documents need --batch\n";
        return 2;
    }

    std::vector<std::future<Outcome>> jobs;
    for (auto& f : files) {
        std::string text;
        try {
            text = slurp(f);
        } catch (const ParseError& e) {
            std::promise<Outcome> p;
            p.set_value({2, "", f + ": " + e.what()});
            jobs.push_back(p.get_future());
            continue;
        }
        jobs.push_back(std::async(std::launch::async, process, f, std::move(text), ov));
    }
    int code = 0;
    for (auto& j : jobs) {
        Outcome o = j.get();
        if (o.code) {
            std::cerr << o.error << "\n";
            if (!code) code = o.code;
        } else {
            std::cout << o.text;
        }
    }
    return code;
}
