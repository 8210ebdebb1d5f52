#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "kdsim/errors.hpp"
#include "kdsim/network.hpp"

namespace kdsim {

enum class Expertise { Novice, Initiate, Apprentice, Journeyman, Expert, Master };

inline const char* to_string(Expertise e) {
    switch (e) {
    case Expertise::Novice: return "Novice";
    case Expertise::Initiate: return "Initiate";
    case Expertise::Apprentice: return "Apprentice";
    case Expertise::Journeyman: return "Journeyman";
    case Expertise::Expert: return "Expert";
    case Expertise::Master: return "Master";
    }
    return "?";
}

// Weights linking knowledge layers to competences. Every competence column
// must sum to 1, so a knowledge vector at the reference level maps to a full
// competence without saturating the cap.
class CompetenceMatrix {
public:
    CompetenceMatrix(std::size_t layer_count, std::vector<std::string> names,
                     const std::vector<std::vector<double>>& columns)
        : layers_(layer_count), names_(std::move(names)) {
        if (names_.size() != columns.size())
            throw DimensionMismatch("CompetenceMatrix: one name per competence column");
        w_.assign(layers_ * names_.size(), 0.0);
        for (std::size_t a = 0; a < columns.size(); ++a) {
            if (columns[a].size() != layers_)
                throw DimensionMismatch("CompetenceMatrix: column '" + names_[a] +
                                        "' must have one weight per layer");
            double sum = 0.0;
            for (std::size_t j = 0; j < layers_; ++j) {
                if (columns[a][j] < 0.0)
                    throw InvalidParameter("CompetenceMatrix: negative weight in '" + names_[a] + "'");
                w_[j * names_.size() + a] = columns[a][j];
                sum += columns[a][j];
            }
            if (std::abs(sum - 1.0) > 1e-9)
                throw InvalidParameter("CompetenceMatrix: column '" + names_[a] +
                                       "' sums to " + std::to_string(sum) + ", expected 1");
        }
    }

    std::size_t layer_count() const { return layers_; }
    std::size_t competence_count() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    double weight(std::size_t layer, std::size_t competence) const {
        return w_[layer * names_.size() + competence];
    }

    friend bool operator==(const CompetenceMatrix&, const CompetenceMatrix&) = default;

private:
    std::size_t layers_;
    std::vector<std::string> names_;
    std::vector<double> w_; // row-major [layer][competence]
};

// c_a = min(1, sum_j m_ja * k_j / k_ref).
inline std::vector<double> competence_value(const CompetenceMatrix& m,
                                            std::span<const double> knowledge, double k_ref) {
    if (k_ref <= 0.0)
        throw InvalidParameter("competence_value: k_ref must be positive");
    if (knowledge.size() != m.layer_count())
        throw DimensionMismatch("competence_value: knowledge length does not match layer count");
    std::vector<double> out(m.competence_count(), 0.0);
    for (std::size_t a = 0; a < out.size(); ++a) {
        double raw = 0.0;
        for (std::size_t j = 0; j < m.layer_count(); ++j)
            raw += m.weight(j, a) * knowledge[j];
        out[a] = std::min(1.0, raw / k_ref);
    }
    return out;
}

// Six-band classification; intervals closed on the left, Master reserved for
// c = 1 within 1e-9.
inline Expertise expertise_level(double c) {
    if (!(c >= 0.0 && c <= 1.0))
        throw OutOfRange("expertise_level: competence value outside [0,1]");
    if (c >= 1.0 - 1e-9)
        return Expertise::Master;
    if (c >= 0.8)
        return Expertise::Expert;
    if (c >= 0.6)
        return Expertise::Journeyman;
    if (c >= 0.4)
        return Expertise::Apprentice;
    if (c >= 0.2)
        return Expertise::Initiate;
    return Expertise::Novice;
}

inline std::vector<double> organizational_competence(const std::vector<std::vector<double>>& per_agent) {
    if (per_agent.empty())
        throw EmptyPopulation("organizational_competence: no agents");
    std::vector<double> mean(per_agent.front().size(), 0.0);
    for (const auto& values : per_agent)
        for (std::size_t a = 0; a < mean.size(); ++a)
            mean[a] += values[a];
    for (double& v : mean)
        v /= static_cast<double>(per_agent.size());
    return mean;
}

struct CompetenceReport {
    std::vector<AgentId> agents;
    std::vector<std::vector<double>> values; // [agent][competence]
    std::vector<std::vector<Expertise>> levels;
    std::vector<double> organizational_mean; // [competence]
};

} // namespace kdsim
