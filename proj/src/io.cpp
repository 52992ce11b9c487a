#include "ecdl/io.hpp"

#include <cstdio>
#include <sstream>

namespace ecdl {

std::map<std::string, std::string> parse_kv(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream is(text);
    std::string line;
    auto trim = [](std::string s) {
        size_t a = s.find_first_not_of(" \t\r");
        size_t b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(is, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        size_t eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = val;
    }
    return kv;
}

uint64_t parse_u64(const std::string& s) {
    if (s.empty()) throw ConfigError("empty numeric field");
    try {
        return std::stoull(s, nullptr, 0);  // handles 0x prefixes
    } catch (const std::exception&) {
        throw ConfigError("bad numeric field: " + s);
    }
}

std::string to_hex(uint64_t v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "0x%llx", (unsigned long long)v);
    return buf;
}

std::string instance_to_config(const SubgroupCtx& sub) {
    std::ostringstream os;
    os << "n = " << sub.ctx->degree() << "\n";
    os << "f = " << to_hex(sub.ctx->modulus()) << "\n";
    os << "A = " << to_hex(sub.curve.A().bits()) << "\n";
    os << "B = " << to_hex(sub.curve.B().bits()) << "\n";
    os << "P.x = " << to_hex(sub.P.x.bits()) << "\n";
    os << "P.y = " << to_hex(sub.P.y.bits()) << "\n";
    os << "r = " << to_hex(sub.r) << "\n";
    os << "N = " << to_hex(sub.N) << "\n";
    os << "Q.x = " << to_hex(sub.Q.x.bits()) << "\n";
    os << "Q.y = " << to_hex(sub.Q.y.bits()) << "\n";
    if (sub.z_true) os << "z_true = " << to_hex(*sub.z_true) << "\n";
    return os.str();
}

SubgroupCtx instance_from_config(const std::string& text) {
    auto kv = parse_kv(text);
    auto need = [&](const std::string& key) {
        auto it = kv.find(key);
        if (it == kv.end()) throw ConfigError("missing config key: " + key);
        return parse_u64(it->second);
    };
    unsigned n = unsigned(need("n"));
    uint64_t f = need("f");
    auto ctx = std::make_shared<BinaryFieldCtx>(n, f);
    BinaryCurve curve(ctx.get(), ctx->element(need("A")), ctx->element(need("B")));
    Point P{ctx->element(need("P.x")), ctx->element(need("P.y"))};
    Point Q{ctx->element(need("Q.x")), ctx->element(need("Q.y"))};
    if (!curve.on_curve(P) || !curve.on_curve(Q))
        throw ConfigError("instance points are not on the curve");
    SubgroupCtx sub{ctx, curve, P, need("r"), need("N"), 0, Q, std::nullopt};
    sub.cofactor = sub.N / sub.r;
    if (!curve.mul(sub.r, P).is_inf()) throw ConfigError("P does not have order r");
    if (kv.count("z_true")) sub.z_true = parse_u64(kv["z_true"]);
    return sub;
}

std::string csv_escape(const std::string& field) {
    bool need = field.find_first_of(",\"\n") != std::string::npos;
    if (!need) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ",";
        out += csv_escape(fields[i]);
    }
    out += "\n";
    return out;
}

} // namespace ecdl
