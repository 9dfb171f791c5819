#include "deconv/truth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace deconv {

namespace {

double normal_pdf(double x, double mean, double sd) {
    const double z = (x - mean) / sd;
    return std::exp(-0.5 * z * z) / (sd * std::sqrt(kTwoPi));
}

}  // namespace

TrueDensity TrueDensity::gaussian(double mean, double sd) {
    if (!(sd > 0.0)) throw ConfigInvalid("gaussian truth: sd must be positive");
    TrueDensity d;
    d.family_ = TruthFamily::Gaussian;
    d.comps_ = {GaussianComponent{1.0, mean, sd}};
    char buf[64];
    std::snprintf(buf, sizeof buf, "gaussian:mean=%g,sd=%g", mean, sd);
    d.name_ = buf;
    return d;
}

TrueDensity TrueDensity::mixture(std::vector<GaussianComponent> components) {
    if (components.empty()) throw ConfigInvalid("mixture truth: no components");
    double total = 0.0;
    for (const auto& c : components) {
        if (!(c.sd > 0.0) || !(c.weight > 0.0))
            throw ConfigInvalid("mixture truth: weights and sds must be positive");
        total += c.weight;
    }
    for (auto& c : components) c.weight /= total;
    TrueDensity d;
    d.family_ = TruthFamily::Mixture;
    d.comps_ = std::move(components);
    std::ostringstream name;
    name << "mixture:";
    for (std::size_t i = 0; i < d.comps_.size(); ++i) {
        if (i) name << ";";
        name << d.comps_[i].weight << "," << d.comps_[i].mean << "," << d.comps_[i].sd;
    }
    d.name_ = name.str();
    return d;
}

TrueDensity TrueDensity::uniform(double a, double b) {
    if (!(b > a)) throw ConfigInvalid("uniform truth: need b > a");
    TrueDensity d;
    d.family_ = TruthFamily::Uniform;
    d.a_ = a;
    d.b_ = b;
    char buf[64];
    std::snprintf(buf, sizeof buf, "uniform:a=%g,b=%g", a, b);
    d.name_ = buf;
    return d;
}

TrueDensity TrueDensity::parse(const std::string& text) {
    double a = 0.0, b = 0.0;
    if (std::sscanf(text.c_str(), "gaussian:mean=%lf,sd=%lf", &a, &b) == 2) return gaussian(a, b);
    if (std::sscanf(text.c_str(), "uniform:a=%lf,b=%lf", &a, &b) == 2) return uniform(a, b);
    if (text.rfind("mixture:", 0) == 0) {
        std::vector<GaussianComponent> comps;
        std::stringstream body(text.substr(8));
        std::string item;
        while (std::getline(body, item, ';')) {
            GaussianComponent c;
            if (std::sscanf(item.c_str(), "%lf,%lf,%lf", &c.weight, &c.mean, &c.sd) != 3)
                throw ConfigInvalid("bad mixture component '" + item + "'");
            comps.push_back(c);
        }
        return mixture(std::move(comps));
    }
    throw ConfigInvalid("unknown truth '" + text + "'");
}

double TrueDensity::pdf(double x) const {
    if (family_ == TruthFamily::Uniform) return (x >= a_ && x <= b_) ? 1.0 / (b_ - a_) : 0.0;
    double acc = 0.0;
    for (const auto& c : comps_) acc += c.weight * normal_pdf(x, c.mean, c.sd);
    return acc;
}

double TrueDensity::second_deriv(double x) const {
    if (family_ == TruthFamily::Uniform) return 0.0;  // flat inside, undefined at the edges
    double acc = 0.0;
    for (const auto& c : comps_) {
        const double z = (x - c.mean) / c.sd;
        acc += c.weight * normal_pdf(x, c.mean, c.sd) * (z * z - 1.0) / (c.sd * c.sd);
    }
    return acc;
}

std::complex<double> TrueDensity::cf(double t) const {
    if (family_ == TruthFamily::Uniform) {
        if (t == 0.0) return {1.0, 0.0};
        const std::complex<double> num =
            std::exp(std::complex<double>(0.0, t * b_)) - std::exp(std::complex<double>(0.0, t * a_));
        return num / std::complex<double>(0.0, t * (b_ - a_));
    }
    std::complex<double> acc{0.0, 0.0};
    for (const auto& c : comps_)
        acc += c.weight * std::exp(std::complex<double>(-0.5 * c.sd * c.sd * t * t, c.mean * t));
    return acc;
}

double TrueDensity::mean() const {
    if (family_ == TruthFamily::Uniform) return 0.5 * (a_ + b_);
    double acc = 0.0;
    for (const auto& c : comps_) acc += c.weight * c.mean;
    return acc;
}

double TrueDensity::variance() const {
    if (family_ == TruthFamily::Uniform) return (b_ - a_) * (b_ - a_) / 12.0;
    const double m = mean();
    double acc = 0.0;
    for (const auto& c : comps_)
        acc += c.weight * (c.sd * c.sd + (c.mean - m) * (c.mean - m));
    return acc;
}

std::pair<double, double> TrueDensity::support_hint(double eps_mass) const {
    if (family_ == TruthFamily::Uniform) return {a_, b_};
    // z such that the normal tail mass is below eps_mass; 6 covers 1e-8 amply
    const double z = std::sqrt(-2.0 * std::log(eps_mass)) + 1.0;
    double lo = comps_.front().mean, hi = lo;
    for (const auto& c : comps_) {
        lo = std::min(lo, c.mean - z * c.sd);
        hi = std::max(hi, c.mean + z * c.sd);
    }
    return {lo, hi};
}

double TrueDensity::sample(CounterRng& rng) const {
    if (family_ == TruthFamily::Uniform) return rng.uniform(a_, b_);
    if (comps_.size() == 1) return rng.normal(comps_[0].mean, comps_[0].sd);
    const double u = rng.uniform01();
    double cum = 0.0;
    for (const auto& c : comps_) {
        cum += c.weight;
        if (u <= cum) return rng.normal(c.mean, c.sd);
    }
    return rng.normal(comps_.back().mean, comps_.back().sd);
}

}  // namespace deconv
