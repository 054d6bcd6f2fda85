#include "sinkless/problems.hpp"

#include "sinkless/errors.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace sinkless {

std::vector<int> find_sinks(int n, std::span<const std::pair<int, int>> edges, const Orientation& o) {
    if (o.toward_max.size() != edges.size())
        throw PreconditionError("orientation does not cover exactly the graph's edges");
    std::vector<int> outdeg(n, 0);
    for (size_t i = 0; i < edges.size(); ++i) {
        auto [u, v] = edges[i];
        ++outdeg[o.toward_max[i] ? u : v];
    }
    std::vector<int> sinks;
    for (int v = 0; v < n; ++v)
        if (outdeg[v] == 0) sinks.push_back(v);
    return sinks;
}

std::vector<std::pair<int, int>> plain_edges(const EdgeColouredGraph& g) {
    std::vector<std::pair<int, int>> out;
    out.reserve(g.edge_count());
    for (const auto& e : g.edges()) out.emplace_back(e.u, e.v);
    return out;
}

std::vector<int> verify_orientation(const EdgeColouredGraph& g, const Orientation& o) {
    auto edges = plain_edges(g);
    return find_sinks(g.node_count(), edges, o);
}

std::vector<int> verify_orientation(const SimpleGraph& g, const Orientation& o) {
    return find_sinks(g.node_count(), g.edges(), o);
}

std::vector<int> verify_colouring(const EdgeColouredGraph& g, const Colouring& c) {
    if (static_cast<int>(c.colour.size()) != g.node_count())
        throw PreconditionError("colouring must assign every node");
    for (int v = 0; v < g.node_count(); ++v)
        if (c.colour[v] < 0 || c.colour[v] >= g.degree())
            throw PreconditionError("colour out of range at node " + std::to_string(v));
    std::vector<int> bad;
    for (int i = 0; i < g.edge_count(); ++i) {
        const ColouredEdge& e = g.edge(i);
        if (c.colour[e.u] == e.colour && c.colour[e.v] == e.colour) bad.push_back(i);
    }
    return bad;
}

Orientation orientation_from_colouring(const EdgeColouredGraph& g, const Colouring& c) {
    // Each node claims its own-colour edge outward. A conflict would need
    // phi(u) = phi(v) = psi(e), i.e. a forbidden configuration, so on a
    // sinkless colouring claims never clash; remaining edges go toward the
    // smaller endpoint.
    Orientation o;
    o.toward_max.assign(g.edge_count(), 0);
    std::vector<char> claimed(g.edge_count(), 0);
    for (int v = 0; v < g.node_count(); ++v) {
        int e = g.incident_edge(v, c.colour[v]);
        const ColouredEdge& ce = g.edge(e);
        if (claimed[e] && ((ce.u == v && !o.toward_max[e]) || (ce.v == v && o.toward_max[e])))
            throw PreconditionError("colouring is not sinkless: both endpoints claim edge " + std::to_string(e));
        claimed[e] = 1;
        o.toward_max[e] = ce.u == v ? 1 : 0;
    }
    return o;
}

Colouring colouring_from_orientation(const EdgeColouredGraph& g, const Orientation& o) {
    if (static_cast<int>(o.toward_max.size()) != g.edge_count())
        throw PreconditionError("orientation does not cover exactly the graph's edges");
    Colouring c;
    c.colour.assign(g.node_count(), -1);
    for (int i = 0; i < g.edge_count(); ++i) {
        const ColouredEdge& e = g.edge(i);
        int tail = o.toward_max[i] ? e.u : e.v;
        if (c.colour[tail] == -1 || e.colour < c.colour[tail]) c.colour[tail] = e.colour;
    }
    for (int v = 0; v < g.node_count(); ++v)
        if (c.colour[v] == -1)
            throw PreconditionError("orientation is not sinkless: node " + std::to_string(v) + " is a sink");
    return c;
}

// --- LLL instances -----------------------------------------------------------

LllInstance::LllInstance(std::vector<LllVariable> vars, std::vector<LllEvent> events)
    : vars_(std::move(vars)), events_(std::move(events)) {
    std::set<std::string> names;
    for (const auto& v : vars_) {
        if (v.domain < 1) throw PreconditionError("LllInstance: variable domain must be >= 1");
        if (!names.insert(v.name).second)
            throw PreconditionError("LllInstance: duplicate variable name '" + v.name + "'");
    }
    domain_size_.reserve(events_.size());
    for (auto& ev : events_) {
        uint64_t prod = 1;
        std::set<int> uniq;
        for (int x : ev.vars) {
            if (x < 0 || x >= variable_count()) throw PreconditionError("LllInstance: variable index out of range");
            if (!uniq.insert(x).second) throw PreconditionError("LllInstance: event lists a variable twice");
            uint64_t dom = static_cast<uint64_t>(vars_[x].domain);
            if (prod > (uint64_t(1) << 62) / std::max<uint64_t>(dom, 1))
                throw ResourceError("LllInstance: event domain product exceeds 2^62");
            prod *= dom;
        }
        domain_size_.push_back(prod);
        std::sort(ev.bad.begin(), ev.bad.end());
        ev.bad.erase(std::unique(ev.bad.begin(), ev.bad.end()), ev.bad.end());
        if (!ev.bad.empty() && ev.bad.back() >= prod)
            throw PreconditionError("LllInstance: bad tuple out of the event's domain");
    }
}

uint64_t LllInstance::pack(int ev, std::span<const int> values) const {
    const LllEvent& e = events_[ev];
    if (values.size() != e.vars.size()) throw PreconditionError("pack: value count mismatch");
    uint64_t packed = 0, mult = 1;
    for (size_t i = 0; i < e.vars.size(); ++i) {
        int dom = vars_[e.vars[i]].domain;
        if (values[i] < 0 || values[i] >= dom) throw PreconditionError("pack: value out of domain");
        packed += mult * static_cast<uint64_t>(values[i]);
        mult *= static_cast<uint64_t>(dom);
    }
    return packed;
}

std::vector<int> LllInstance::unpack(int ev, uint64_t packed) const {
    const LllEvent& e = events_[ev];
    std::vector<int> values(e.vars.size());
    for (size_t i = 0; i < e.vars.size(); ++i) {
        int dom = vars_[e.vars[i]].domain;
        values[i] = static_cast<int>(packed % dom);
        packed /= dom;
    }
    return values;
}

bool LllInstance::event_occurs(int ev, std::span<const int> values) const {
    uint64_t packed = pack(ev, values);
    const auto& bad = events_[ev].bad;
    return std::binary_search(bad.begin(), bad.end(), packed);
}

Rational LllInstance::event_probability(int ev) const {
    return Rational(BigInt(events_[ev].bad.size()), BigInt(domain_size_[ev]));
}

Rational LllInstance::max_event_probability() const {
    Rational p(0);
    for (int ev = 0; ev < event_count(); ++ev) p = std::max(p, event_probability(ev));
    return p;
}

SimpleGraph dependency_graph(const LllInstance& inst) {
    std::vector<std::vector<int>> events_of_var(inst.variable_count());
    for (int ev = 0; ev < inst.event_count(); ++ev)
        for (int x : inst.event(ev).vars) events_of_var[x].push_back(ev);
    std::set<std::pair<int, int>> edges;
    for (const auto& evs : events_of_var)
        for (size_t i = 0; i < evs.size(); ++i)
            for (size_t j = i + 1; j < evs.size(); ++j)
                edges.insert(std::minmax(evs[i], evs[j]));
    return SimpleGraph(inst.event_count(), {edges.begin(), edges.end()});
}

int LllInstance::dependency_degree() const {
    SimpleGraph dep = dependency_graph(*this);
    int d = 0;
    for (int v = 0; v < dep.node_count(); ++v) d = std::max(d, dep.degree(v));
    return d;
}

namespace {

// Brackets for e: partial sums of sum 1/k!. The remainder after k = 40 is
// below 2/41! < 1e-49, far finer than any instance's probability grain.
std::pair<Rational, Rational> euler_brackets() {
    Rational lo(0);
    BigInt fact(1);
    for (int k = 0; k <= 40; ++k) {
        if (k > 0) fact *= k;
        lo += Rational(BigInt(1), fact);
    }
    Rational hi = lo + Rational(BigInt(2), fact * 41);
    return {lo, hi};
}

} // namespace

CriterionReport check_lll_criterion(const LllInstance& inst, LllCriterion criterion,
                                    std::optional<Rational> f_of_d) {
    CriterionReport r;
    r.p = inst.max_event_probability();
    r.dependency_degree = inst.dependency_degree();
    switch (criterion) {
    case LllCriterion::euler_p_d_plus_1: {
        auto [e_lo, e_hi] = euler_brackets();
        Rational base = r.p * rat(r.dependency_degree + 1);
        Rational lhs_lo = base * e_lo, lhs_hi = base * e_hi;
        if (lhs_hi <= 1) {
            r.satisfied = true;
        } else if (lhs_lo > 1) {
            r.satisfied = false;
        } else {
            throw std::logic_error("e-criterion falls inside the e brackets; widen euler_brackets()");
        }
        r.lhs = lhs_hi;
        r.detail = "e*p*(d+1) with e bracketed to 1e-49";
        break;
    }
    case LllCriterion::four_p_d:
        r.lhs = rat(4) * r.p * rat(r.dependency_degree);
        r.satisfied = r.lhs <= 1;
        r.detail = "4*p*d";
        break;
    case LllCriterion::p_f_d:
        if (!f_of_d) throw PreconditionError("check_lll_criterion: p*f(d) needs f(d)");
        r.lhs = r.p * *f_of_d;
        r.satisfied = r.lhs <= 1;
        r.detail = "p*f(d) with supplied f(d)";
        break;
    }
    r.margin = Rational(1) - r.lhs;
    return r;
}

AssignmentCheck check_assignment(const LllInstance& inst, const std::vector<EventAssignment>& per_event) {
    if (static_cast<int>(per_event.size()) != inst.event_count())
        return {false, "assignment count does not match event count", -1, -1, -1};
    // value per (event, variable) for the agreement check
    std::vector<std::map<int, int>> val(inst.event_count());
    for (int ev = 0; ev < inst.event_count(); ++ev) {
        const LllEvent& e = inst.event(ev);
        if (per_event[ev].values.size() != e.vars.size())
            return {false, "event assignment arity mismatch", ev, -1, -1};
        for (size_t i = 0; i < e.vars.size(); ++i) {
            int dom = inst.variable(e.vars[i]).domain;
            if (per_event[ev].values[i] < 0 || per_event[ev].values[i] >= dom)
                return {false, "value out of domain", ev, -1, e.vars[i]};
            val[ev][e.vars[i]] = per_event[ev].values[i];
        }
    }
    std::vector<std::vector<int>> events_of_var(inst.variable_count());
    for (int ev = 0; ev < inst.event_count(); ++ev)
        for (int x : inst.event(ev).vars) events_of_var[x].push_back(ev);
    for (int x = 0; x < inst.variable_count(); ++x) {
        const auto& evs = events_of_var[x];
        for (size_t i = 1; i < evs.size(); ++i)
            if (val[evs[i]][x] != val[evs[0]][x])
                return {false, "adjacent events disagree on a shared variable", evs[0], evs[i], x};
    }
    for (int ev = 0; ev < inst.event_count(); ++ev)
        if (inst.event_occurs(ev, per_event[ev].values))
            return {false, "event occurs under its assignment", ev, -1, -1};
    return {true, "", -1, -1, -1};
}

AssignmentCheck check_assignment(const LllInstance& inst, const Assignment& a) {
    if (static_cast<int>(a.value.size()) != inst.variable_count())
        return {false, "assignment must cover every variable", -1, -1, -1};
    std::vector<EventAssignment> per_event(inst.event_count());
    for (int ev = 0; ev < inst.event_count(); ++ev)
        for (int x : inst.event(ev).vars) per_event[ev].values.push_back(a.value[x]);
    return check_assignment(inst, per_event);
}

// --- text formats --------------------------------------------------------------

namespace {

struct LineReader {
    std::istream& in;
    std::string file;
    int no = 0;

    // next payload line as a token stream; false at EOF
    bool next(std::istringstream& s) {
        std::string line;
        while (std::getline(in, line)) {
            ++no;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream probe(line);
            std::string tok;
            if (probe >> tok) {
                s = std::istringstream(line);
                return true;
            }
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(file, no, msg); }
};

} // namespace

LllInstance parse_instance(std::istream& in, const std::string& name) {
    LineReader r{in, name};
    std::istringstream s;
    std::string kw;
    int k = 0;
    if (!r.next(s) || !(s >> kw >> k) || kw != "variables") r.fail("expected 'variables k'");
    std::vector<LllVariable> vars(k);
    for (int i = 0; i < k; ++i) {
        if (!r.next(s) || !(s >> vars[i].name >> vars[i].domain)) r.fail("expected 'name domain_size'");
    }
    int m = 0;
    if (!r.next(s) || !(s >> kw >> m) || kw != "events") r.fail("expected 'events m'");
    std::vector<LllEvent> events(m);
    // Bad tuples arrive as value lists; pack them after the instance shape is
    // known, via a scratch instance with no events.
    std::vector<std::vector<std::vector<int>>> raw_bad(m);
    for (int ev = 0; ev < m; ++ev) {
        int arity = 0, bad_count = 0;
        if (!r.next(s) || !(s >> arity)) r.fail("expected 'arity v_1 ... v_arity bad_count'");
        events[ev].vars.resize(arity);
        for (int i = 0; i < arity; ++i)
            if (!(s >> events[ev].vars[i])) r.fail("expected " + std::to_string(arity) + " variable indices");
        if (!(s >> bad_count)) r.fail("expected bad_count after the variable list");
        raw_bad[ev].resize(bad_count, std::vector<int>(arity));
        for (int b = 0; b < bad_count; ++b) {
            if (!r.next(s)) r.fail("expected a bad tuple line");
            for (int i = 0; i < arity; ++i)
                if (!(s >> raw_bad[ev][b][i])) r.fail("bad tuple needs " + std::to_string(arity) + " values");
        }
    }
    LllInstance shape(vars, std::vector<LllEvent>(events)); // validates vars/arity
    for (int ev = 0; ev < m; ++ev)
        for (const auto& tuple : raw_bad[ev]) events[ev].bad.push_back(shape.pack(ev, tuple));
    return LllInstance(std::move(vars), std::move(events));
}

LllInstance read_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open file");
    return parse_instance(in, path);
}

void write_instance(std::ostream& out, const LllInstance& inst, const std::string& comment) {
    if (!comment.empty()) out << "# " << comment << "\n";
    out << "variables " << inst.variable_count() << "\n";
    for (int i = 0; i < inst.variable_count(); ++i)
        out << inst.variable(i).name << " " << inst.variable(i).domain << "\n";
    out << "events " << inst.event_count() << "\n";
    for (int ev = 0; ev < inst.event_count(); ++ev) {
        const LllEvent& e = inst.event(ev);
        out << e.vars.size();
        for (int x : e.vars) out << " " << x;
        out << " " << e.bad.size() << "\n";
        for (uint64_t packed : e.bad) {
            auto tuple = inst.unpack(ev, packed);
            for (size_t i = 0; i < tuple.size(); ++i) out << (i ? " " : "") << tuple[i];
            out << "\n";
        }
    }
}

void write_instance_file(const std::string& path, const LllInstance& inst, const std::string& comment) {
    std::ofstream out(path);
    if (!out) throw ParseError(path, 0, "cannot open file for writing");
    write_instance(out, inst, comment);
}

Assignment parse_assignment(std::istream& in, const LllInstance& inst, const std::string& name) {
    LineReader r{in, name};
    std::istringstream s;
    std::string kw;
    int k = 0;
    if (!r.next(s) || !(s >> kw >> k) || kw != "assignment") r.fail("expected 'assignment k'");
    if (k != inst.variable_count()) r.fail("assignment must cover every variable");
    std::map<std::string, int> index;
    for (int i = 0; i < inst.variable_count(); ++i) index[inst.variable(i).name] = i;
    Assignment a;
    a.value.assign(k, -1);
    for (int i = 0; i < k; ++i) {
        std::string var;
        int value;
        if (!r.next(s) || !(s >> var >> value)) r.fail("expected 'name value'");
        auto it = index.find(var);
        if (it == index.end()) r.fail("unknown variable '" + var + "'");
        if (value < 0 || value >= inst.variable(it->second).domain) r.fail("value out of domain");
        a.value[it->second] = value;
    }
    return a;
}

void write_assignment(std::ostream& out, const LllInstance& inst, const Assignment& a,
                      const std::string& comment) {
    if (!comment.empty()) out << "# " << comment << "\n";
    out << "assignment " << inst.variable_count() << "\n";
    for (int i = 0; i < inst.variable_count(); ++i)
        out << inst.variable(i).name << " " << a.value[i] << "\n";
}

Orientation parse_orientation(std::istream& in, int n, std::span<const std::pair<int, int>> edges,
                              const std::string& name) {
    LineReader r{in, name};
    std::istringstream s;
    std::string kw;
    size_t m = 0;
    if (!r.next(s) || !(s >> kw >> m) || kw != "orientation") r.fail("expected 'orientation m'");
    if (m != edges.size()) r.fail("orientation must cover exactly the graph's edges");
    std::map<std::pair<int, int>, int> index;
    for (size_t i = 0; i < edges.size(); ++i) index[edges[i]] = static_cast<int>(i);
    Orientation o;
    o.toward_max.assign(edges.size(), 0);
    std::vector<char> seen(edges.size(), 0);
    for (size_t i = 0; i < m; ++i) {
        int tail, head;
        if (!r.next(s) || !(s >> tail >> head)) r.fail("expected 'tail head'");
        if (tail < 0 || head < 0 || tail >= n || head >= n) r.fail("node out of range");
        auto it = index.find(std::minmax(tail, head));
        if (it == index.end()) r.fail("no such edge {" + std::to_string(tail) + "," + std::to_string(head) + "}");
        if (seen[it->second]) r.fail("edge oriented twice");
        seen[it->second] = 1;
        o.toward_max[it->second] = head > tail ? 1 : 0;
    }
    return o;
}

void write_orientation(std::ostream& out, std::span<const std::pair<int, int>> edges, const Orientation& o,
                       const std::string& comment) {
    if (!comment.empty()) out << "# " << comment << "\n";
    out << "orientation " << edges.size() << "\n";
    for (size_t i = 0; i < edges.size(); ++i) {
        auto [u, v] = edges[i];
        if (o.toward_max[i]) out << u << " " << v << "\n";
        else out << v << " " << u << "\n";
    }
}

Colouring parse_colouring(std::istream& in, int n, const std::string& name) {
    LineReader r{in, name};
    std::istringstream s;
    std::string kw;
    int k = 0;
    if (!r.next(s) || !(s >> kw >> k) || kw != "colouring") r.fail("expected 'colouring n'");
    if (k != n) r.fail("colouring must assign every node");
    Colouring c;
    c.colour.assign(n, -1);
    for (int i = 0; i < k; ++i) {
        int node, colour;
        if (!r.next(s) || !(s >> node >> colour)) r.fail("expected 'node colour'");
        if (node < 0 || node >= n) r.fail("node out of range");
        if (c.colour[node] != -1) r.fail("node coloured twice");
        c.colour[node] = colour;
    }
    return c;
}

void write_colouring(std::ostream& out, const Colouring& c, const std::string& comment) {
    if (!comment.empty()) out << "# " << comment << "\n";
    out << "colouring " << c.colour.size() << "\n";
    for (size_t v = 0; v < c.colour.size(); ++v) out << v << " " << c.colour[v] << "\n";
}

} // namespace sinkless
