#include "erfeo/config_io.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

#include "erfeo/errors.hpp"

namespace erfeo {

namespace {

using Setter = std::function<void(ModelConfig&, const toml::node&, const std::string&)>;

double as_number(const toml::node& n, const std::string& key) {
    if (auto v = n.value<double>()) return *v;
    throw ConfigError("'" + key + "' must be a number");
}

void set_vec(Vec3& v, const toml::node& n, const std::string& key) {
    if (const auto* arr = n.as_array()) {
        if (arr->size() != 3) throw ConfigError("'" + key + "' must have three components");
        for (int i = 0; i < 3; ++i) v[i] = as_number(*arr->get(i), key);
        return;
    }
    if (const auto* tbl = n.as_table()) {
        for (const auto& [k, sub] : *tbl) {
            const std::string name(k.str());
            int idx = name == "x" ? 0 : name == "y" ? 1 : name == "z" ? 2 : -1;
            if (idx < 0) throw ConfigError("unknown component '" + key + "." + name + "'");
            v[idx] = as_number(sub, key + "." + name);
        }
        return;
    }
    throw ConfigError("'" + key + "' must be a 3-vector");
}

template <typename F>
Setter num(F field) {
    return [field](ModelConfig& c, const toml::node& n, const std::string& key) {
        field(c) = as_number(n, key);
    };
}

template <typename F>
Setter vec(F field) {
    return [field](ModelConfig& c, const toml::node& n, const std::string& key) {
        set_vec(field(c), n, key);
    };
}

const std::map<std::string, std::map<std::string, Setter>>& schema() {
    static const std::map<std::string, std::map<std::string, Setter>> s = {
        {"fe",
         {
             {"S", num([](ModelConfig& c) -> double& { return c.fe.S; })},
             {"z",
              [](ModelConfig& c, const toml::node& n, const std::string& key) {
                  auto v = n.value<int64_t>();
                  if (!v) throw ConfigError("'" + key + "' must be an integer");
                  c.fe.z = static_cast<int>(*v);
              }},
             {"J_Fe", num([](ModelConfig& c) -> double& { return c.fe.J_Fe; })},
             {"D_Fe_y", num([](ModelConfig& c) -> double& { return c.fe.D_Fe_y; })},
             {"A_x", num([](ModelConfig& c) -> double& { return c.fe.A_x; })},
             {"A_z", num([](ModelConfig& c) -> double& { return c.fe.A_z; })},
             {"A_xz", num([](ModelConfig& c) -> double& { return c.fe.A_xz; })},
             {"A_y", num([](ModelConfig& c) -> double& { return c.fe.A_y; })},
             {"g_Fe", vec([](ModelConfig& c) -> Vec3& { return c.fe.g_Fe; })},
         }},
        {"er",
         {
             {"g_Er", vec([](ModelConfig& c) -> Vec3& { return c.er.g_Er; })},
             {"J_Er", num([](ModelConfig& c) -> double& { return c.er.J_Er; })},
         }},
        {"exchange",
         {
             {"J", num([](ModelConfig& c) -> double& { return c.xc.J; })},
             {"D_x", num([](ModelConfig& c) -> double& { return c.xc.D_x; })},
             {"D_y", num([](ModelConfig& c) -> double& { return c.xc.D_y; })},
             {"J_prime", num([](ModelConfig& c) -> double& { return c.xc.J_prime; })},
             {"D_x_prime", num([](ModelConfig& c) -> double& { return c.xc.D_x_prime; })},
             {"D_y_prime", num([](ModelConfig& c) -> double& { return c.xc.D_y_prime; })},
             {"D_z", num([](ModelConfig& c) -> double& { return c.xc.D_z; })},
             {"D_z_prime", num([](ModelConfig& c) -> double& { return c.xc.D_z_prime; })},
         }},
        {"environment",
         {
             {"T", num([](ModelConfig& c) -> double& { return c.env.T; })},
             {"B_ext", vec([](ModelConfig& c) -> Vec3& { return c.env.B_ext; })},
             {"x", num([](ModelConfig& c) -> double& { return c.env.x; })},
         }},
    };
    return s;
}

void apply_table(ModelConfig& cfg, const toml::table& root) {
    const auto& sch = schema();
    for (const auto& [sec_key, sec_node] : root) {
        const std::string sec(sec_key.str());
        auto it = sch.find(sec);
        if (it == sch.end()) throw ConfigError("unknown section '" + sec + "'");
        const auto* tbl = sec_node.as_table();
        if (!tbl) throw ConfigError("'" + sec + "' must be a table");
        for (const auto& [k, n] : *tbl) {
            const std::string key(k.str());
            auto f = it->second.find(key);
            if (f == it->second.end()) throw ConfigError("unknown key '" + sec + "." + key + "'");
            f->second(cfg, n, sec + "." + key);
        }
    }
}

toml::table parse_toml(std::string_view text) {
    try {
        return toml::parse(text);
    } catch (const toml::parse_error& e) {
        std::ostringstream os;
        os << "TOML parse error: " << e.description() << " at " << e.source().begin;
        throw ConfigError(os.str());
    }
}

std::string fmt_num(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, res.ptr);
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

std::string fmt_vec(const Vec3& v) {
    return "[" + fmt_num(v[0]) + ", " + fmt_num(v[1]) + ", " + fmt_num(v[2]) + "]";
}

}  // namespace

ModelConfig parse_config(std::string_view toml_text, ModelConfig base) {
    apply_table(base, parse_toml(toml_text));
    check_config(base);
    return base;
}

ModelConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void apply_override(ModelConfig& cfg, std::string_view assignment) {
    if (assignment.find('=') == std::string_view::npos)
        throw ConfigError("override must look like key=value: '" + std::string(assignment) + "'");
    ModelConfig next = cfg;
    apply_table(next, parse_toml(assignment));
    check_config(next);
    cfg = next;
}

std::string to_toml(const ModelConfig& c) {
    std::ostringstream os;
    os << "[fe]\n"
       << "S = " << fmt_num(c.fe.S) << "\n"
       << "z = " << c.fe.z << "\n"
       << "J_Fe = " << fmt_num(c.fe.J_Fe) << "\n"
       << "D_Fe_y = " << fmt_num(c.fe.D_Fe_y) << "\n"
       << "A_x = " << fmt_num(c.fe.A_x) << "\n"
       << "A_z = " << fmt_num(c.fe.A_z) << "\n"
       << "A_xz = " << fmt_num(c.fe.A_xz) << "\n"
       << "A_y = " << fmt_num(c.fe.A_y) << "\n"
       << "g_Fe = " << fmt_vec(c.fe.g_Fe) << "\n\n"
       << "[er]\n"
       << "g_Er = " << fmt_vec(c.er.g_Er) << "\n"
       << "J_Er = " << fmt_num(c.er.J_Er) << "\n\n"
       << "[exchange]\n"
       << "J = " << fmt_num(c.xc.J) << "\n"
       << "D_x = " << fmt_num(c.xc.D_x) << "\n"
       << "D_y = " << fmt_num(c.xc.D_y) << "\n"
       << "J_prime = " << fmt_num(c.xc.J_prime) << "\n"
       << "D_x_prime = " << fmt_num(c.xc.D_x_prime) << "\n"
       << "D_y_prime = " << fmt_num(c.xc.D_y_prime) << "\n"
       << "D_z = " << fmt_num(c.xc.D_z) << "\n"
       << "D_z_prime = " << fmt_num(c.xc.D_z_prime) << "\n\n"
       << "[environment]\n"
       << "T = " << fmt_num(c.env.T) << "\n"
       << "B_ext = " << fmt_vec(c.env.B_ext) << "\n"
       << "x = " << fmt_num(c.env.x) << "\n";
    return os.str();
}

}  // namespace erfeo
