#pragma once

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "miniaj/aosg.hpp"
#include "miniaj/events.hpp"

namespace miniaj {

using Json = nlohmann::ordered_json;

// Exported edges carry only (src, dst, kind): the role and variable split is
// internal bookkeeping for marking. Duplicates collapse, order is fixed, so
// the same graph always serializes to the same bytes.
inline std::vector<std::tuple<int, int, int>> exportEdges(const Aosg& g) {
    std::vector<std::tuple<int, int, int>> out;
    out.reserve(g.edges.size());
    for (const Edge& e : g.edges) out.emplace_back(e.src, e.dst, (int)e.kind);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline Json graphJson(const Aosg& g) {
    Json j;
    j["statements"] = g.statementCount();
    Json verts = Json::array();
    for (int id = 1; id <= g.vertexCount(); id++) {
        const Vertex& v = g.vertices[id];
        Json jv;
        jv["id"] = v.id;
        jv["kind"] = vertexKindName(v.kind);
        jv["stmt"] = v.stmt;
        if (v.pos >= 0) jv["pos"] = v.pos;
        jv["label"] = v.label;
        verts.push_back(std::move(jv));
    }
    j["vertices"] = std::move(verts);
    Json edges = Json::array();
    for (auto [src, dst, kind] : exportEdges(g)) {
        Json je;
        je["src"] = src;
        je["dst"] = dst;
        je["kind"] = edgeKindName((EdgeKind)kind);
        edges.push_back(std::move(je));
    }
    j["edges"] = std::move(edges);
    return j;
}

namespace detail {

inline std::string dotEscape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

inline const char* dotShape(VertexKind k) {
    switch (k) {
        case VertexKind::Predicate: return "diamond";
        case VertexKind::CNode: return "circle";
        case VertexKind::ActualIn:
        case VertexKind::ActualOut:
        case VertexKind::FormalIn:
        case VertexKind::FormalOut: return "ellipse";
        default: return "box";
    }
}

inline const char* dotStyle(EdgeKind k) {
    switch (k) {
        case EdgeKind::ControlDep: return "";
        case EdgeKind::DataDep: return " [style=dashed]";
        case EdgeKind::Call: return " [color=blue]";
        case EdgeKind::ParamIn: return " [style=dotted]";
        case EdgeKind::ParamOut: return " [style=dotted,color=blue]";
        case EdgeKind::Summary: return " [style=dotted,color=gray]";
        case EdgeKind::AspectMembership: return " [style=dashed,color=darkgreen]";
        case EdgeKind::AdviceEdge: return " [color=purple]";
    }
    return "";
}

}  // namespace detail

inline std::string graphDot(const Aosg& g) {
    std::ostringstream out;
    out << "digraph deps {\n  rankdir=TB;\n  node [fontsize=10];\n";
    for (int id = 1; id <= g.vertexCount(); id++) {
        const Vertex& v = g.vertices[id];
        std::string label = v.kind == VertexKind::CNode
                                ? std::string("C")
                                : std::to_string(v.stmt) + ": " + v.label;
        if (v.id > g.statementCount() && v.kind != VertexKind::CNode) label = v.label;
        out << "  v" << id << " [label=\"" << detail::dotEscape(label) << "\", shape="
            << detail::dotShape(v.kind) << "];\n";
    }
    for (auto [src, dst, kind] : exportEdges(g))
        out << "  v" << src << " -> v" << dst << detail::dotStyle((EdgeKind)kind) << ";\n";
    out << "}\n";
    return out.str();
}

inline Json eventJson(const Event& e) {
    Json j;
    j["seq"] = e.seq;
    j["kind"] = eventKindName(e.kind);
    switch (e.kind) {
        case EventKind::StatementExecuted: j["stmt"] = e.stmt; break;
        case EventKind::MethodEntered:
        case EventKind::MethodExited:
            j["method"] = e.method;
            j["site"] = e.site;
            if (e.kind == EventKind::MethodExited && e.returnStmt) j["return"] = e.returnStmt;
            break;
        case EventKind::AdviceEntered:
        case EventKind::AdviceExited:
            j["advice"] = e.advice;
            j["adviceKind"] = e.adviceKind == AdviceKind::Before ? "before" : "afterReturning";
            j["site"] = e.site;
            j["pointcut"] = e.pointcut;
            break;
        case EventKind::ObjectCreated:
            j["stmt"] = e.stmt;
            j["class"] = e.className;
            break;
    }
    return j;
}

}  // namespace miniaj
