#include "twscore/model_io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace twscore {

using nlohmann::json;

namespace {

json distribution_to_json_obj(const Distribution& d) {
    json params = json::object();
    switch (d.family) {
        case Family::Normal:
        case Family::Laplace:
        case Family::Logistic:
        case Family::LogLogistic:
        case Family::LogNormal:
            params = {{"mu", d.mu}, {"sigma", d.sigma}};
            break;
        case Family::StudentT:
            params = {{"nu", d.shape}, {"mu", d.mu}, {"sigma", d.sigma}};
            break;
        case Family::Exponential:
            params = {{"rate", d.rate}};
            break;
        case Family::Gamma:
            params = {{"shape", d.shape}, {"rate", d.rate}};
            break;
        case Family::Uniform:
            params = {{"a", d.lo}, {"b", d.hi}};
            break;
        case Family::Gpd:
            params = {{"mu", d.mu}, {"sigma", d.sigma}, {"xi", d.shape}};
            break;
        case Family::TruncNormal:
        case Family::TruncLogistic:
            params = {{"mu", d.mu}, {"sigma", d.sigma}, {"a", d.lo}};
            if (std::isfinite(d.hi)) params["b"] = d.hi;
            break;
    }
    return json{{"family", family_name(d.family)}, {"params", params}};
}

Distribution distribution_from_json_obj(const json& j) {
    const Family fam = family_from_name(j.at("family").get<std::string>());
    const json& p = j.at("params");
    const double inf = std::numeric_limits<double>::infinity();
    switch (fam) {
        case Family::Normal:
            return Distribution::normal(p.at("mu"), p.at("sigma"));
        case Family::Laplace:
            return Distribution::laplace(p.at("mu"), p.at("sigma"));
        case Family::Logistic:
            return Distribution::logistic(p.at("mu"), p.at("sigma"));
        case Family::StudentT:
            return Distribution::student_t(p.at("nu"), p.value("mu", 0.0),
                                           p.value("sigma", 1.0));
        case Family::Exponential:
            return Distribution::exponential(p.at("rate"));
        case Family::Gamma:
            return Distribution::gamma(p.at("shape"), p.at("rate"));
        case Family::LogLogistic:
            if (p.contains("alpha"))
                return Distribution::log_logistic_scale_shape(p.at("alpha"), p.at("beta"));
            return Distribution::log_logistic(p.at("mu"), p.at("sigma"));
        case Family::LogNormal:
            return Distribution::log_normal(p.at("mu"), p.at("sigma"));
        case Family::Uniform:
            return Distribution::uniform(p.at("a"), p.at("b"));
        case Family::Gpd:
            return Distribution::gpd(p.at("mu"), p.at("sigma"), p.at("xi"));
        case Family::TruncNormal:
            return Distribution::trunc_normal(p.at("mu"), p.at("sigma"), p.at("a"),
                                              p.value("b", inf));
        case Family::TruncLogistic:
            return Distribution::trunc_logistic(p.at("mu"), p.at("sigma"), p.at("a"),
                                                p.value("b", inf));
    }
    throw std::domain_error("distribution_from_json: unhandled family");
}

json model_to_json_obj(const EmosModel& m) {
    json trained = {{"kind", score_kind_name(m.trained_with.kind)},
                    {"tau", m.trained_with.tau},
                    {"gamma", m.trained_with.gamma}};
    if (m.trained_with.kind == ScoreKind::HbLoss) {
        trained["a"] = m.trained_with.a;
        trained["b"] = m.trained_with.b;
    }
    return json{{"station_id", m.station_id},
                {"family", emos_family_name(m.family)},
                {"trained_with", trained},
                {"coeffs",
                 {{"alpha", m.coeffs.alpha},
                  {"beta", m.coeffs.beta},
                  {"lmu_sin", m.coeffs.lmu_sin},
                  {"lmu_cos", m.coeffs.lmu_cos},
                  {"gamma_c", m.coeffs.gamma_c},
                  {"delta", m.coeffs.delta},
                  {"lsig_sin", m.coeffs.lsig_sin},
                  {"lsig_cos", m.coeffs.lsig_cos}}}};
}

EmosModel model_from_json_obj(const json& j) {
    EmosModel m;
    m.station_id = j.at("station_id").get<std::string>();
    m.family = emos_family_from_name(j.at("family").get<std::string>());
    const json& t = j.at("trained_with");
    m.trained_with.kind = score_kind_from_name(t.at("kind").get<std::string>());
    m.trained_with.tau = t.value("tau", 0.0);
    m.trained_with.gamma = t.value("gamma", 0.0);
    m.trained_with.a = t.value("a", 0.0);
    m.trained_with.b = t.value("b", 1.0);
    m.trained_with.x0 = m.trained_with.tau;
    const json& c = j.at("coeffs");
    m.coeffs.alpha = c.at("alpha");
    m.coeffs.beta = c.at("beta");
    m.coeffs.lmu_sin = c.at("lmu_sin");
    m.coeffs.lmu_cos = c.at("lmu_cos");
    m.coeffs.gamma_c = c.at("gamma_c");
    m.coeffs.delta = c.at("delta");
    m.coeffs.lsig_sin = c.at("lsig_sin");
    m.coeffs.lsig_cos = c.at("lsig_cos");
    return m;
}

} // namespace

std::string distribution_to_json(const Distribution& d) {
    return distribution_to_json_obj(d).dump(2) + "\n";
}

Distribution distribution_from_json(const std::string& json_text) {
    return distribution_from_json_obj(json::parse(json_text));
}

std::string models_to_json(const std::vector<EmosModel>& models) {
    json arr = json::array();
    for (const EmosModel& m : models) arr.push_back(model_to_json_obj(m));
    return arr.dump(2) + "\n";
}

std::vector<EmosModel> models_from_json(const std::string& json_text) {
    const json arr = json::parse(json_text);
    if (!arr.is_array()) throw std::runtime_error("models_from_json: expected a JSON array");
    std::vector<EmosModel> out;
    out.reserve(arr.size());
    for (const json& j : arr) out.push_back(model_from_json_obj(j));
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace twscore
