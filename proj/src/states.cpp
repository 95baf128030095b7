#include "locc/states.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace locc {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_shape(const SystemShape& shape) {
    if (shape.party_dims.empty())
        throw Error(ErrorKind::InvalidInput, "system needs at least one party");
    if (shape.party_dims.size() > 6)
        throw Error(ErrorKind::InvalidInput, "more than 6 parties is unsupported");
    for (std::size_t d : shape.party_dims) {
        if (d < 2) throw Error(ErrorKind::InvalidInput, "party dimension must be >= 2");
        if (d > 8) throw Error(ErrorKind::InvalidInput, "party dimension > 8 is unsupported");
    }
}

}  // namespace

PureState::PureState(SystemShape s, CVector amps, std::string lbl)
    : shape(std::move(s)), amplitudes(std::move(amps)), label(std::move(lbl)) {
    check_shape(shape);
    if (amplitudes.size() != shape.total_dim())
        throw Error(ErrorKind::ShapeMismatch, "amplitude count does not match total dimension");
    double n = norm2(amplitudes);
    if (std::abs(n - 1.0) > 1e-10)
        throw Error(ErrorKind::NotNormalized, "state norm deviates from 1 by " + std::to_string(std::abs(n - 1.0)));
}

void Ensemble::validate() const {
    if (states.size() < 2) throw Error(ErrorKind::InvalidInput, "ensemble needs at least 2 states");
    const SystemShape& sh = states.front().shape;
    for (const auto& st : states)
        if (!(st.shape == sh)) throw Error(ErrorKind::ShapeMismatch, "mixed system shapes in ensemble");
    if (probabilities.size() != states.size())
        throw Error(ErrorKind::InvalidInput, "probability count does not match state count");
    double sum = 0.0;
    for (double p : probabilities) {
        if (p <= 0.0 || p > 1.0) throw Error(ErrorKind::InvalidInput, "probabilities must lie in (0,1]");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-10)
        throw Error(ErrorKind::InvalidInput, "probabilities do not sum to 1");
    for (std::size_t i = 0; i < states.size(); ++i)
        for (std::size_t j = i + 1; j < states.size(); ++j) {
            double overlap = std::abs(inner(states[i].amplitudes, states[j].amplitudes));
            if (overlap > 1e-8) {
                std::ostringstream msg;
                msg << "states " << i << " and " << j << " overlap by " << overlap;
                throw Error(ErrorKind::NotOrthogonal, msg.str());
            }
        }
}

Ensemble make_ensemble(std::vector<PureState> states, std::vector<double> probabilities) {
    Ensemble e;
    e.states = std::move(states);
    if (probabilities.empty())
        e.probabilities.assign(e.states.size(), 1.0 / static_cast<double>(e.states.size()));
    else
        e.probabilities = std::move(probabilities);
    e.validate();
    return e;
}

Ensemble parse_ensemble(const std::string& document) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(document);
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorKind::ParseError, ex.what());
    }
    try {
        if (!doc.is_object() || !doc.contains("party_dims") || !doc.contains("states"))
            throw Error(ErrorKind::ParseError, "document needs party_dims and states");
        SystemShape shape;
        for (const auto& d : doc.at("party_dims")) shape.party_dims.push_back(d.get<std::size_t>());
        check_shape(shape);

        std::vector<PureState> states;
        for (const auto& js : doc.at("states")) {
            CVector amps;
            for (const auto& pair : js.at("amplitudes")) {
                if (!pair.is_array() || pair.size() != 2)
                    throw Error(ErrorKind::ParseError, "amplitude entries must be [re, im] pairs");
                amps.emplace_back(pair[0].get<double>(), pair[1].get<double>());
            }
            if (amps.size() != shape.total_dim())
                throw Error(ErrorKind::ParseError, "amplitude count does not match party_dims");
            double n = norm2(amps);
            if (std::abs(n - 1.0) > 1e-6)
                throw Error(ErrorKind::NotNormalized,
                            "state norm " + std::to_string(n) + " deviates from 1 beyond 1e-6");
            for (auto& a : amps) a /= n;
            std::string label = js.contains("label") ? js.at("label").get<std::string>() : "";
            states.emplace_back(shape, std::move(amps), std::move(label));
        }

        std::vector<double> probs;
        if (doc.contains("probabilities"))
            for (const auto& p : doc.at("probabilities")) probs.push_back(p.get<double>());
        return make_ensemble(std::move(states), std::move(probs));
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorKind::ParseError, ex.what());
    }
}

namespace {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

std::string serialize_ensemble(const Ensemble& ensemble) {
    std::ostringstream out;
    out << "{\n  \"party_dims\": [";
    for (std::size_t i = 0; i < ensemble.shape().party_dims.size(); ++i)
        out << (i ? ", " : "") << ensemble.shape().party_dims[i];
    out << "],\n  \"states\": [\n";
    for (std::size_t s = 0; s < ensemble.states.size(); ++s) {
        const auto& st = ensemble.states[s];
        out << "    {";
        if (!st.label.empty()) out << "\"label\": " << nlohmann::json(st.label).dump() << ", ";
        out << "\"amplitudes\": [";
        for (std::size_t i = 0; i < st.amplitudes.size(); ++i) {
            out << (i ? ", " : "") << "[" << fmt17(st.amplitudes[i].real()) << ", "
                << fmt17(st.amplitudes[i].imag()) << "]";
        }
        out << "]}" << (s + 1 < ensemble.states.size() ? "," : "") << "\n";
    }
    out << "  ],\n  \"probabilities\": [";
    for (std::size_t i = 0; i < ensemble.probabilities.size(); ++i)
        out << (i ? ", " : "") << fmt17(ensemble.probabilities[i]);
    out << "]\n}\n";
    return out.str();
}

namespace {

PureState basis_state(const SystemShape& shape, std::size_t index, std::string label = "") {
    CVector amps(shape.total_dim(), Complex(0.0, 0.0));
    amps[index] = 1.0;
    return PureState(shape, std::move(amps), std::move(label));
}

PureState superposition(const SystemShape& shape,
                        const std::vector<std::pair<std::size_t, Complex>>& terms,
                        std::string label) {
    CVector amps(shape.total_dim(), Complex(0.0, 0.0));
    for (const auto& [idx, coeff] : terms) amps[idx] = coeff;
    double n = norm2(amps);
    for (auto& a : amps) a /= n;
    return PureState(shape, std::move(amps), std::move(label));
}

Ensemble bell_ensemble(std::size_t count) {
    SystemShape sh{{2, 2}};
    double r = 1.0 / std::sqrt(2.0);
    std::vector<PureState> states = {
        superposition(sh, {{0, r}, {3, r}}, "phi+"),
        superposition(sh, {{0, r}, {3, -r}}, "phi-"),
        superposition(sh, {{1, r}, {2, r}}, "psi+"),
        superposition(sh, {{1, r}, {2, -r}}, "psi-"),
    };
    states.resize(count);
    return make_ensemble(std::move(states));
}

Ensemble comp_basis_ensemble(const std::vector<std::size_t>& params) {
    SystemShape sh;
    sh.party_dims = params.empty() ? std::vector<std::size_t>{2, 2} : params;
    check_shape(sh);
    if (sh.parties() < 2) throw Error(ErrorKind::InvalidParams, "comp_basis needs >= 2 parties");
    std::vector<PureState> states;
    for (std::size_t i = 0; i < sh.total_dim(); ++i)
        states.push_back(basis_state(sh, i, "e" + std::to_string(i)));
    return make_ensemble(std::move(states));
}

// Generalized Bell states (1/sqrt(n)) sum_j w^{j s} |j>|j+t mod n>, enumerated
// with the shift t outer and the phase s inner.
Ensemble maxent_family(std::size_t n, std::size_t k) {
    if (n < 2 || n > 8) throw Error(ErrorKind::InvalidParams, "maxent_family needs 2 <= n <= 8");
    if (k < 2 || k > n * n)
        throw Error(ErrorKind::InvalidParams, "maxent_family needs 2 <= k <= n^2");
    SystemShape sh{{n, n}};
    std::vector<PureState> states;
    for (std::size_t e = 0; e < k; ++e) {
        std::size_t t = e / n, s = e % n;
        std::vector<std::pair<std::size_t, Complex>> terms;
        for (std::size_t j = 0; j < n; ++j) {
            double angle = 2.0 * kPi * static_cast<double>(j * s) / static_cast<double>(n);
            terms.emplace_back(j * n + (j + t) % n, std::polar(1.0, angle));
        }
        states.push_back(superposition(sh, terms, "bell_" + std::to_string(s) + "_" + std::to_string(t)));
    }
    return make_ensemble(std::move(states));
}

// Coefficient vectors (a,b,c) are the rows of the 3x3 discrete Fourier matrix
// over sqrt(3): mutually orthogonal, all W-type.
Ensemble w_triple_ensemble() {
    SystemShape sh{{2, 2, 2}};
    std::vector<PureState> states;
    for (std::size_t r = 0; r < 3; ++r) {
        std::vector<std::pair<std::size_t, Complex>> terms;
        const std::size_t positions[3] = {1, 2, 4};  // |001>, |010>, |100>
        for (std::size_t c = 0; c < 3; ++c) {
            double angle = 2.0 * kPi * static_cast<double>(r * c) / 3.0;
            terms.emplace_back(positions[c], std::polar(1.0, angle));
        }
        states.push_back(superposition(sh, terms, "w" + std::to_string(r)));
    }
    return make_ensemble(std::move(states));
}

Ensemble ghz_w_pair_ensemble() {
    SystemShape sh{{2, 2, 2}};
    std::vector<PureState> states = {
        superposition(sh, {{0, 1.0}, {7, 1.0}}, "ghz"),
        superposition(sh, {{1, 1.0}, {2, 1.0}, {4, 1.0}}, "w"),
    };
    return make_ensemble(std::move(states));
}

// The canonical nine-state domino tiling of 3x3, |x+-y> = (|x> +- |y>)/sqrt(2).
Ensemble domino9_ensemble() {
    SystemShape sh{{3, 3}};
    auto idx = [](std::size_t i, std::size_t j) { return i * 3 + j; };
    std::vector<PureState> states;
    states.push_back(basis_state(sh, idx(1, 1), "1,1"));
    for (int sign : {+1, -1}) {
        Complex s = static_cast<double>(sign);
        std::string tag = sign > 0 ? "+" : "-";
        states.push_back(superposition(sh, {{idx(0, 0), 1.0}, {idx(0, 1), s}}, "0,0" + tag + "1"));
        states.push_back(superposition(sh, {{idx(2, 1), 1.0}, {idx(2, 2), s}}, "2,1" + tag + "2"));
        states.push_back(superposition(sh, {{idx(1, 0), 1.0}, {idx(2, 0), s}}, "1" + tag + "2,0"));
        states.push_back(superposition(sh, {{idx(0, 2), 1.0}, {idx(1, 2), s}}, "0" + tag + "1,2"));
    }
    return make_ensemble(std::move(states));
}

}  // namespace

std::vector<std::string> catalog_names() {
    return {"bell3", "bell4", "comp_basis", "maxent_family", "w_triple", "ghz_w_pair", "domino9"};
}

Ensemble catalog(const std::string& name, const std::vector<std::size_t>& params) {
    if (name == "bell3" || name == "bell4") {
        if (!params.empty()) throw Error(ErrorKind::InvalidParams, name + " takes no params");
        return bell_ensemble(name == "bell3" ? 3 : 4);
    }
    if (name == "comp_basis") return comp_basis_ensemble(params);
    if (name == "maxent_family") {
        if (params.size() != 2)
            throw Error(ErrorKind::InvalidParams, "maxent_family needs params n,k");
        return maxent_family(params[0], params[1]);
    }
    if (name == "w_triple") return w_triple_ensemble();
    if (name == "ghz_w_pair") return ghz_w_pair_ensemble();
    if (name == "domino9") return domino9_ensemble();
    throw Error(ErrorKind::UnknownCatalogEntry, name);
}

Ensemble random_orthogonal_ensemble(const SystemShape& shape, std::size_t m, std::uint64_t seed) {
    check_shape(shape);
    std::size_t dim = shape.total_dim();
    if (m < 2) throw Error(ErrorKind::InvalidInput, "need at least 2 states");
    if (m > dim) throw Error(ErrorKind::TooManyStates, "more states than dimensions");

    GaussianSampler rng(seed);
    std::vector<CVector> frame;
    while (frame.size() < m) {
        CVector v = rng.complex_vector(dim);
        for (const auto& u : frame) {
            Complex ov = inner(u, v);
            for (std::size_t k = 0; k < dim; ++k) v[k] -= ov * u[k];
        }
        double n = norm2(v);
        if (n < 1e-6) continue;  // essentially in the span already, redraw
        for (auto& e : v) e /= n;
        frame.push_back(std::move(v));
    }
    std::vector<PureState> states;
    for (std::size_t i = 0; i < m; ++i)
        states.emplace_back(shape, std::move(frame[i]), "r" + std::to_string(i));
    return make_ensemble(std::move(states));
}

}  // namespace locc
