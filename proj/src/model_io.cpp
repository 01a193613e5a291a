#include "riskcap/model_io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace riskcap {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

double parse_decimal(const std::string& s, const std::string& where) {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') {
        throw FileParse("not a decimal number at " + where + ": '" + s + "'");
    }
    return v;
}

std::string format_decimal(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::vector<double> parse_column(const json& arr, std::size_t n,
                                 const std::string& name) {
    if (!arr.is_array() || arr.size() != n) {
        throw FileParse("column '" + name + "' needs exactly one value per "
                        "state row");
    }
    std::vector<double> v;
    v.reserve(n);
    for (const auto& e : arr) {
        if (e.is_string()) {
            v.push_back(parse_decimal(e.get<std::string>(), name));
        } else if (e.is_number()) {
            v.push_back(e.get<double>());
        } else {
            throw FileParse("column '" + name + "' holds a non-numeric entry");
        }
    }
    return v;
}

}  // namespace

const Position& ModelFile::position(const std::string& name) const {
    auto it = positions.find(name);
    if (it == positions.end()) {
        throw NameNotFound("no position named '" + name + "'");
    }
    return it->second;
}

TradedAsset ModelFile::asset(const std::string& name) const {
    auto it = assets.find(name);
    if (it != assets.end()) return it->second;
    auto pit = positions.find(name);
    if (pit != positions.end()) return TradedAsset(1.0, pit->second);
    throw NameNotFound("no asset or position named '" + name + "'");
}

ModelFile parse_model_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FileParse(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("scenario")) {
        throw FileParse("model needs a 'scenario' array");
    }

    ModelFile m;
    std::vector<std::string> labels;
    std::vector<double> probs;
    for (const auto& row : doc["scenario"]) {
        if (!row.is_object() || !row.contains("state") ||
            !row.contains("prob")) {
            throw FileParse("scenario rows need 'state' and 'prob'");
        }
        labels.push_back(row["state"].get<std::string>());
        const auto& p = row["prob"];
        probs.push_back(p.is_string()
                            ? parse_decimal(p.get<std::string>(), "prob")
                            : p.get<double>());
    }
    double raw_sum = 0.0;
    for (double p : probs) raw_sum += p;
    m.renormalization = std::abs(raw_sum - 1.0);
    try {
        m.space = build_space(labels, probs);
    } catch (const Error& e) {
        throw FileParse(e.what());
    }

    const std::size_t n = labels.size();
    if (doc.contains("positions")) {
        for (const auto& [name, col] : doc["positions"].items()) {
            m.positions.emplace(name,
                                Position(m.space, parse_column(col, n, name)));
        }
    }
    if (doc.contains("assets")) {
        for (const auto& [name, spec] : doc["assets"].items()) {
            if (!spec.is_object() || !spec.contains("price") ||
                !spec.contains("payoff")) {
                throw FileParse("asset '" + name +
                                "' needs 'price' and 'payoff'");
            }
            try {
                m.assets.emplace(
                    name,
                    TradedAsset(spec["price"].get<double>(),
                                Position(m.space, parse_column(
                                                      spec["payoff"], n,
                                                      name))));
            } catch (const Error& e) {
                throw FileParse("asset '" + name + "': " + e.what());
            }
        }
    }
    if (doc.contains("defaults")) {
        const auto& d = doc["defaults"];
        if (d.contains("alpha")) m.default_alpha = d["alpha"].get<double>();
        if (d.contains("acceptance")) {
            m.default_acceptance = d["acceptance"].get<std::string>();
        }
    }
    return m;
}

ModelFile parse_model_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::vector<std::string>> rows;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (line.back() == ',') cells.push_back("");
        if (!rows.empty() && cells.size() != rows.front().size()) {
            throw FileParse("row " + std::to_string(line_no) + " has " +
                            std::to_string(cells.size()) + " cells, header has " +
                            std::to_string(rows.front().size()));
        }
        rows.push_back(std::move(cells));
    }
    if (rows.size() < 2) throw FileParse("CSV needs a header and data rows");
    const auto& header = rows.front();
    if (header.size() < 2 || header[0] != "state" || header[1] != "prob") {
        throw FileParse("CSV header must start with 'state,prob'");
    }

    ModelFile m;
    std::vector<std::string> labels;
    std::vector<double> probs;
    std::vector<std::vector<double>> cols(header.size() - 2);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        labels.push_back(rows[r][0]);
        probs.push_back(parse_decimal(
            rows[r][1], "row " + std::to_string(r + 1) + " col 2"));
        for (std::size_t c = 2; c < header.size(); ++c) {
            cols[c - 2].push_back(parse_decimal(
                rows[r][c], "row " + std::to_string(r + 1) + " col " +
                                std::to_string(c + 1)));
        }
    }
    double raw_sum = 0.0;
    for (double p : probs) raw_sum += p;
    m.renormalization = std::abs(raw_sum - 1.0);
    try {
        m.space = build_space(labels, probs);
    } catch (const Error& e) {
        throw FileParse(e.what());
    }
    for (std::size_t c = 2; c < header.size(); ++c) {
        m.positions.emplace(header[c], Position(m.space, cols[c - 2]));
    }
    return m;
}

ModelFile load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileParse("cannot open model file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    bool csv = path.size() >= 4 && path.substr(path.size() - 4) == ".csv";
    return csv ? parse_model_csv(buf.str()) : parse_model_json(buf.str());
}

std::string write_model_json(const ModelFile& m) {
    ordered_json doc;
    doc["scenario"] = ordered_json::array();
    for (std::size_t i = 0; i < m.space->size(); ++i) {
        doc["scenario"].push_back({{"state", m.space->label(i)},
                                   {"prob", format_decimal(m.space->prob(i))}});
    }
    doc["positions"] = ordered_json::object();
    for (const auto& [name, pos] : m.positions) {
        doc["positions"][name] = pos.values();
    }
    doc["assets"] = ordered_json::object();
    for (const auto& [name, asset] : m.assets) {
        doc["assets"][name] = {{"price", asset.price()},
                               {"payoff", asset.payoff().values()}};
    }
    doc["defaults"] = {{"alpha", m.default_alpha},
                       {"acceptance", m.default_acceptance}};
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

namespace {

const char* method_name(SolveMethod m) {
    switch (m) {
        case SolveMethod::VarSweep: return "VAR_SWEEP";
        case SolveMethod::TvarBisect: return "TVAR_BISECT";
        case SolveMethod::ExpectationClosed: return "EXPECTATION_CLOSED";
        case SolveMethod::ConeBisect: return "CONE_BISECT";
    }
    return "?";
}

json confidence_json(const Confidence& c) {
    switch (c.kind) {
        case ConfidenceKind::Exact:
            return {{"kind", "EXACT"}};
        case ConfidenceKind::Numeric:
            return {{"kind", "NUMERIC"}, {"tolerance", c.tolerance}};
        case ConfidenceKind::BudgetExhausted:
            return {{"kind", "BUDGET_EXHAUSTED"}};
    }
    return {};
}

json finite_or_string(double v) {
    if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
    return v;
}

}  // namespace

json to_json(const ExtendedAmount& a) {
    json j;
    switch (a.kind()) {
        case AmountKind::NegInf: j["value"] = "-inf"; break;
        case AmountKind::PosInf: j["value"] = "+inf"; break;
        case AmountKind::Finite: j["value"] = a.value(); break;
    }
    j["attained"] = a.attained();
    j["confidence"] = confidence_json(a.confidence());
    return j;
}

json to_json(const CapitalResult& r) {
    json j;
    j["amount"] = to_json(r.amount);
    j["method"] = method_name(r.method);
    if (r.acceptable_position) {
        j["acceptable_position"] = r.acceptable_position->values();
    }
    if (r.may_take_pos_inf) j["may_take_pos_inf"] = true;
    if (r.may_take_neg_inf) j["may_take_neg_inf"] = true;
    return j;
}

json to_json(const FinitenessReport& r, const ModelFile&) {
    json j;
    j["never_pos_inf"] = r.never_pos_inf;
    j["never_neg_inf"] = r.never_neg_inf;
    j["finite_everywhere"] = r.finite_everywhere;
    j["rule"] = r.rule;
    if (r.pos_inf_witness) j["pos_inf_witness"] = r.pos_inf_witness->values();
    if (r.neg_inf_witness) j["neg_inf_witness"] = r.neg_inf_witness->values();
    if (r.lipschitz_bound) j["lipschitz_bound"] = *r.lipschitz_bound;
    return j;
}

json to_json(const ContinuityReport& r, const ModelFile&) {
    json j;
    j["scope"] = r.scope == ContinuityScope::Pointwise ? "POINTWISE" : "GLOBAL";
    j["continuous"] = r.continuous;
    j["lsc"] = r.lsc;
    j["usc"] = r.usc;
    if (r.witness) {
        j["witness"] = {{"description", r.witness->description},
                        {"position", r.witness->position.values()},
                        {"gap", finite_or_string(r.witness->gap)}};
    }
    if (r.lipschitz_bound) j["lipschitz_bound"] = *r.lipschitz_bound;
    return j;
}

json to_json(const Verdict& v, const ModelFile&) {
    json j;
    j["status"] = v.status == VerdictStatus::Refuted ? "REFUTED" : "NOT_REFUTED";
    j["trials"] = v.trials;
    j["seed"] = v.seed;
    j["note"] = v.note;
    if (v.witness) j["witness"] = v.witness->values();
    if (v.witness_lambda) j["witness_lambda"] = *v.witness_lambda;
    return j;
}

json to_json(const DominanceResult& r, const ModelFile& m) {
    json j;
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    if (r.witnesses) {
        j["status"] = "REFUTED";
        j["witness_low"] = r.witnesses->low.values();
        j["witness_high"] = r.witnesses->high.values();
    } else {
        j["status"] = "NOT_REFUTED";
        if (r.equality) j["equality"] = to_json(*r.equality, m);
    }
    return j;
}

}  // namespace riskcap
