// SPDX-License-Identifier: MIT
#include "mfk/model_io.hpp"

#include <fstream>
#include <vector>

#include <json.hpp>

#include "mfk/errors.hpp"

namespace mfk {

namespace {

using nlohmann::json;

json vector_to_json(const Eigen::VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::VectorXd vector_from_json(const json& j) {
    const auto values = j.get<std::vector<double>>();
    return Eigen::Map<const Eigen::VectorXd>(values.data(),
                                             static_cast<Eigen::Index>(values.size()));
}

Eigen::MatrixXd matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw DataFormatError("model JSON: sites must be a 2-D array");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        if (static_cast<Eigen::Index>(j[i].size()) != cols)
            throw DataFormatError("model JSON: ragged sites array");
        for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = j[i][k].get<double>();
    }
    return m;
}

json kriging_to_json_obj(const KrigingModel& model) {
    const SampleSet& s = model.samples();
    json j;
    j["kind"] = "kriging";
    j["dimension"] = model.dimension();
    j["domain_lower"] = vector_to_json(s.domain.lower);
    j["domain_upper"] = vector_to_json(s.domain.upper);
    j["fidelity"] = to_string(s.fidelity);
    j["theta"] = vector_to_json(model.theta());
    j["mu_star"] = model.mu_star();
    j["sigma2"] = model.sigma2();
    j["nugget"] = model.nugget();
    j["response_mean"] = s.response_mean;
    j["sites"] = matrix_to_json(s.sites);
    j["responses"] = vector_to_json(s.responses);
    return j;
}

KrigingModel kriging_from_json_obj(const json& j) {
    SampleSet s;
    s.domain.lower = vector_from_json(j.at("domain_lower"));
    s.domain.upper = vector_from_json(j.at("domain_upper"));
    s.fidelity = parse_fidelity(j.at("fidelity").get<std::string>());
    s.sites = matrix_from_json(j.at("sites"));
    s.responses = vector_from_json(j.at("responses"));
    s.response_mean = j.at("response_mean").get<double>();
    if (s.sites.cols() != j.at("dimension").get<int>())
        throw DataFormatError("model JSON: dimension disagrees with sites");
    if (s.sites.rows() != s.responses.size())
        throw DataFormatError("model JSON: sites/responses row mismatch");
    return KrigingModel::restore(s, vector_from_json(j.at("theta")), j.at("nugget").get<double>());
}

}  // namespace

std::string to_json(const KrigingModel& model) {
    return kriging_to_json_obj(model).dump(2) + "\n";
}

std::string to_json(const HkModel& model) {
    json j;
    j["kind"] = "hierarchical_kriging";
    j["lf_model"] = kriging_to_json_obj(model.lf_model());
    j["theta_hf"] = vector_to_json(model.theta_hf());
    j["beta_star"] = model.beta_star();
    j["sigma2_hf"] = model.sigma2_hf();
    j["nugget_hf"] = model.nugget_hf();
    j["hf_fidelity"] = to_string(model.hf_samples().fidelity);
    j["hf_response_mean"] = model.hf_response_mean();
    j["hf_sites"] = matrix_to_json(model.hf_samples().sites);
    j["hf_responses"] = vector_to_json(model.hf_samples().responses);
    return j.dump(2) + "\n";
}

namespace {

json parse_checked(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw DataFormatError("model JSON: parse failure");
    return j;
}

}  // namespace

KrigingModel kriging_from_json(const std::string& text) {
    try {
        const json j = parse_checked(text);
        if (j.value("kind", "") != "kriging")
            throw DataFormatError("model JSON: expected kind 'kriging'");
        return kriging_from_json_obj(j);
    } catch (const json::exception& e) {
        throw DataFormatError(std::string("model JSON: ") + e.what());
    }
}

HkModel hk_from_json(const std::string& text) {
    try {
        const json j = parse_checked(text);
        if (j.value("kind", "") != "hierarchical_kriging")
            throw DataFormatError("model JSON: expected kind 'hierarchical_kriging'");
        const KrigingModel lf = kriging_from_json_obj(j.at("lf_model"));

        SampleSet hf;
        hf.domain = lf.samples().domain;
        hf.fidelity = parse_fidelity(j.at("hf_fidelity").get<std::string>());
        hf.sites = matrix_from_json(j.at("hf_sites"));
        hf.responses = vector_from_json(j.at("hf_responses"));
        hf.response_mean = j.at("hf_response_mean").get<double>();
        if (hf.sites.rows() != hf.responses.size())
            throw DataFormatError("model JSON: hf sites/responses row mismatch");
        return HkModel::restore(lf, hf, vector_from_json(j.at("theta_hf")),
                                j.at("nugget_hf").get<double>());
    } catch (const json::exception& e) {
        throw DataFormatError(std::string("model JSON: ") + e.what());
    }
}

bool is_hk_json(const std::string& text) {
    const json j = json::parse(text, nullptr, false);
    return !j.is_discarded() && j.value("kind", "") == "hierarchical_kriging";
}

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << text;
}

}  // namespace

void save_model(const KrigingModel& model, const std::string& path) {
    write_file(path, to_json(model));
}

void save_model(const HkModel& model, const std::string& path) {
    write_file(path, to_json(model));
}

KrigingModel load_kriging(const std::string& path) { return kriging_from_json(read_file(path)); }

HkModel load_hk(const std::string& path) { return hk_from_json(read_file(path)); }

}  // namespace mfk
