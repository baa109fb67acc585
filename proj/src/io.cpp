#include "liouville/io.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace liouville {

namespace {

std::string strip(const std::string& line)
{
    std::string s = line.substr(0, line.find('#'));
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void parse_error(std::size_t line, const std::string& what)
{
    throw std::invalid_argument("line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> tokens(const std::string& s)
{
    std::istringstream ss(s);
    std::vector<std::string> out;
    for (std::string t; ss >> t;) out.push_back(t);
    return out;
}

long parse_long(const std::string& s, std::size_t line)
{
    try {
        std::size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size()) parse_error(line, "bad integer '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        parse_error(line, "bad integer '" + s + "'");
    }
}

// "key=value" with the expected key.
std::string keyed(const std::string& tok, const std::string& key, std::size_t line)
{
    if (tok.rfind(key + "=", 0) != 0) parse_error(line, "expected " + key + "=<value>");
    return tok.substr(key.size() + 1);
}

Real parse_real_at(const std::string& s, std::size_t line)
{
    try {
        return parse_real(s);
    } catch (const std::invalid_argument& e) {
        parse_error(line, e.what());
    }
}

std::ifstream open_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open " + path);
    return f;
}

}  // namespace

int real_digits()
{
    return static_cast<int>(precision_bits() * 0.30103) + 3;
}

WeightedGraph read_graph(std::istream& in)
{
    std::string raw;
    std::size_t lineno = 0;
    std::optional<std::size_t> count;
    std::vector<Edge> edges;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string s = strip(raw);
        if (s.empty()) continue;
        auto t = tokens(s);
        if (!count) {
            if (t.size() != 2 || t[0] != "graph") parse_error(lineno, "expected header 'graph v=<count>'");
            long v = parse_long(keyed(t[1], "v", lineno), lineno);
            if (v < 1) parse_error(lineno, "vertex count must be positive");
            count = static_cast<std::size_t>(v);
            continue;
        }
        if (t.size() != 3) parse_error(lineno, "expected 'x y mu'");
        long x = parse_long(t[0], lineno), y = parse_long(t[1], lineno);
        if (x < 0 || y < 0) parse_error(lineno, "vertex ids must be nonnegative");
        edges.push_back({static_cast<Vertex>(x), static_cast<Vertex>(y), parse_real_at(t[2], lineno)});
    }
    if (!count) throw std::invalid_argument("missing 'graph v=<count>' header");
    return WeightedGraph(*count, std::move(edges));
}

WeightedGraph read_graph_file(const std::string& path)
{
    auto f = open_file(path);
    return read_graph(f);
}

void write_graph(std::ostream& out, const WeightedGraph& g)
{
    const int digits = real_digits();
    out << "graph v=" << g.vertex_count() << "\n";
    for (const auto& e : g.edges()) out << e.x << " " << e.y << " " << format_real(e.mu, digits) << "\n";
}

AnyRadialTree read_radial(std::istream& in)
{
    std::string raw;
    std::size_t lineno = 0;
    bool header = false;
    unsigned N = 0;
    long horizon = 0;
    int arm = 0;  // 0 before any marker
    bool two_sided = false;
    std::map<long, Real> w;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string s = strip(raw);
        if (s.empty()) continue;
        auto t = tokens(s);
        if (!header) {
            if (t.size() != 3 || t[0] != "radial") parse_error(lineno, "expected header 'radial N=<N> horizon=<H>'");
            long n = parse_long(keyed(t[1], "N", lineno), lineno);
            if (n < 2) parse_error(lineno, "N must be at least 2");
            N = static_cast<unsigned>(n);
            horizon = parse_long(keyed(t[2], "horizon", lineno), lineno);
            if (horizon < 0) parse_error(lineno, "horizon must be nonnegative");
            header = true;
            continue;
        }
        if (t.size() == 2 && t[0] == "arm") {
            if (t[1] == "+") arm = 1;
            else if (t[1] == "-") arm = -1;
            else parse_error(lineno, "arm marker must be '+' or '-'");
            two_sided = true;
            continue;
        }
        if (t.size() != 2) parse_error(lineno, "expected 'n w_n'");
        long n = parse_long(t[0], lineno);
        if (two_sided && ((arm == 1 && n < 0) || (arm == -1 && n > -1) || arm == 0)) {
            parse_error(lineno, "layer " + std::to_string(n) + " does not belong to the current arm");
        }
        if (!two_sided && n < 0) parse_error(lineno, "negative layer without an 'arm -' marker");
        if (!w.emplace(n, parse_real_at(t[1], lineno)).second) parse_error(lineno, "duplicate layer");
    }
    if (!header) throw std::invalid_argument("missing 'radial N=<N> horizon=<H>' header");
    auto take = [&](long from, long to) {
        std::vector<Real> v;
        for (long n = from; from <= to ? n <= to : n >= to; n += from <= to ? 1 : -1) {
            auto it = w.find(n);
            if (it == w.end()) throw std::invalid_argument("missing weight for layer " + std::to_string(n));
            v.push_back(it->second);
        }
        return v;
    };
    if (!two_sided) {
        long top = w.empty() ? -1 : w.rbegin()->first;
        if (top != static_cast<long>(w.size()) - 1) throw std::invalid_argument("radial weights must cover 0..n");
        RadialTree tree(N, take(0, top));
        if (tree.horizon() < horizon) throw std::invalid_argument("fewer weights than the declared horizon");
        return tree;
    }
    long top = w.rbegin()->first, bottom = w.begin()->first;
    if (top - bottom + 1 != static_cast<long>(w.size())) throw std::invalid_argument("radial weights have gaps");
    TwoSidedRadialTree tree(N, take(0, top), take(-1, bottom));
    if (tree.horizon() < horizon) throw std::invalid_argument("fewer weights than the declared horizon");
    return tree;
}

void write_radial(std::ostream& out, const RadialTree& t)
{
    const int digits = real_digits();
    out << "radial N=" << t.degree() << " horizon=" << t.horizon() << "\n";
    for (long n = 0; n <= t.horizon(); ++n) out << n << " " << format_real(t.weight(n), digits) << "\n";
}

void write_radial(std::ostream& out, const TwoSidedRadialTree& t)
{
    const int digits = real_digits();
    out << "radial N=" << t.degree() << " horizon=" << t.horizon() << "\n";
    out << "arm +\n";
    for (long n = 0; n <= t.highest_weight(); ++n) out << n << " " << format_real(t.weight(n), digits) << "\n";
    out << "arm -\n";
    for (long n = -1; n >= t.lowest_weight(); --n) out << n << " " << format_real(t.weight(n), digits) << "\n";
}

void write_radial(std::ostream& out, const AnyRadialTree& t)
{
    std::visit([&](const auto& tree) { write_radial(out, tree); }, t);
}

GraphFunction read_function_csv(std::istream& in, std::size_t vertex_count)
{
    std::vector<std::optional<Real>> vals(vertex_count);
    std::string raw;
    std::size_t lineno = 0;
    bool first = true;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string s = strip(raw);
        if (s.empty()) continue;
        auto comma = s.find(',');
        if (comma == std::string::npos) parse_error(lineno, "expected 'vertex,value'");
        std::string a = strip(s.substr(0, comma)), b = strip(s.substr(comma + 1));
        if (first && a == "vertex") {
            first = false;
            continue;
        }
        first = false;
        long x = parse_long(a, lineno);
        if (x < 0 || static_cast<std::size_t>(x) >= vertex_count) parse_error(lineno, "vertex id out of range");
        if (vals[x]) parse_error(lineno, "duplicate vertex " + a);
        vals[x] = parse_real_at(b, lineno);
    }
    GraphFunction u;
    u.reserve(vertex_count);
    for (std::size_t x = 0; x < vertex_count; ++x) {
        if (!vals[x]) throw std::invalid_argument("no value for vertex " + std::to_string(x));
        u.push_back(std::move(*vals[x]));
    }
    return u;
}

GraphFunction read_function_csv_file(const std::string& path, std::size_t vertex_count)
{
    auto f = open_file(path);
    return read_function_csv(f, vertex_count);
}

void write_function_csv(std::ostream& out, const GraphFunction& u)
{
    const int digits = real_digits();
    out << "vertex,value\n";
    for (std::size_t x = 0; x < u.size(); ++x) out << x << "," << format_real(u[x], digits) << "\n";
}

RadialFunction read_layer_function_csv(std::istream& in)
{
    std::map<long, Real> vals;
    std::string raw;
    std::size_t lineno = 0;
    bool first = true;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string s = strip(raw);
        if (s.empty()) continue;
        auto comma = s.find(',');
        if (comma == std::string::npos) parse_error(lineno, "expected 'layer,value'");
        std::string a = strip(s.substr(0, comma)), b = strip(s.substr(comma + 1));
        if (first && a == "layer") {
            first = false;
            continue;
        }
        first = false;
        if (!vals.emplace(parse_long(a, lineno), parse_real_at(b, lineno)).second) {
            parse_error(lineno, "duplicate layer " + a);
        }
    }
    if (vals.empty()) throw std::invalid_argument("no layer values");
    long lo = vals.begin()->first, hi = vals.rbegin()->first;
    if (hi - lo + 1 != static_cast<long>(vals.size())) throw std::invalid_argument("layer values have gaps");
    std::vector<Real> v;
    v.reserve(vals.size());
    for (auto& [n, x] : vals) v.push_back(std::move(x));
    return RadialFunction(lo, std::move(v));
}

RadialFunction read_layer_function_csv_file(const std::string& path)
{
    auto f = open_file(path);
    return read_layer_function_csv(f);
}

void write_layer_csv(std::ostream& out, const BuiltCounterexample& built, const MarginReport& report)
{
    const int digits = 20;
    out << "layer,w,u,laplacian,grad,margin\n";
    for (const auto& l : report.layers) {
        Real w = std::visit([&](const auto& t) { return t.weight(l.layer); }, built.tree);
        out << l.layer << "," << format_real(w, digits) << "," << format_real(built.u.at(l.layer), digits) << ","
            << format_real(l.laplacian, digits) << "," << format_real(l.gradient, digits) << ","
            << format_real(l.margin, digits) << "\n";
    }
}

}  // namespace liouville
