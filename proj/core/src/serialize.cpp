// Copyright 2026 The swapsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "swapsim/serialize.hpp"

#include "json.hpp"
#include "swapsim/errors.hpp"

namespace swapsim {

std::string density_matrix_to_json(const DensityMatrix& rho, int indent) {
    nlohmann::json labels = nlohmann::json::array();
    for (const ModeLabel& label : rho.labels().labels()) {
        labels.push_back(label.name());
    }
    nlohmann::json rows = nlohmann::json::array();
    const Matrix& m = rho.entries();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back({m(i, j).real(), m(i, j).imag()});
        }
        rows.push_back(std::move(row));
    }
    nlohmann::json doc = {
        {"labels", std::move(labels)},
        {"dimension", m.rows()},
        {"weight", rho.weight()},
        {"entries", std::move(rows)},
    };
    return doc.dump(indent);
}

DensityMatrix density_matrix_from_json(std::string_view text) {
    try {
        const nlohmann::json doc = nlohmann::json::parse(text);
        std::vector<ModeLabel> labels;
        for (const auto& name : doc.at("labels")) {
            labels.emplace_back(name.get<std::string>());
        }
        Register reg(std::move(labels));
        const auto dim = static_cast<Eigen::Index>(reg.dimension());
        const auto& rows = doc.at("entries");
        if (static_cast<Eigen::Index>(rows.size()) != dim) {
            throw ValidationError("density matrix JSON: row count does not match labels");
        }
        Matrix m(dim, dim);
        for (Eigen::Index i = 0; i < dim; ++i) {
            const auto& row = rows.at(static_cast<std::size_t>(i));
            if (static_cast<Eigen::Index>(row.size()) != dim) {
                throw ValidationError("density matrix JSON: ragged row");
            }
            for (Eigen::Index j = 0; j < dim; ++j) {
                const auto& pair = row.at(static_cast<std::size_t>(j));
                m(i, j) = Complex(pair.at(0).get<double>(), pair.at(1).get<double>());
            }
        }
        return DensityMatrix(std::move(reg), std::move(m), doc.at("weight").get<double>());
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("density matrix JSON: ") + e.what());
    }
}

}  // namespace swapsim
