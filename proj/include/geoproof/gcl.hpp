#ifndef GEOPROOF_GCL_HPP
#define GEOPROOF_GCL_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "geoproof/geometry.hpp"

namespace geoproof::gcl {

struct Command {
    enum class Kind {
        Point, Towards, Midpoint, Line, Circle, Intersec2,
        DrawSegment, DrawLine, DrawCircle,
        CMark, CMarkT, CMarkB, MarkT,
        Distance, Call, AnimationFrames, HideLayersFrom, Layer, Comment,
        // dialect extensions used by interpretation procedures
        Extend, RandTowards, RightAngleMark, TickMark
    };
    Kind kind = Kind::Comment;
    std::vector<std::string> args; // identifier arguments, in command order
    std::vector<double> numbers;   // numeric arguments, in command order
    std::string text;              // comment body (with leading %)
    int line = 0;

    friend bool operator==(const Command& a, const Command& b) {
        return a.kind == b.kind && a.args == b.args && a.numbers == b.numbers && a.text == b.text;
    }
};

struct Procedure {
    std::string name;
    std::vector<std::string> params;
    std::vector<Command> body;
    int line = 0;

    friend bool operator==(const Procedure& a, const Procedure& b) {
        return a.name == b.name && a.params == b.params && a.body == b.body;
    }
};

struct Item;

struct GCLProgram {
    std::vector<Item> items;
    friend bool operator==(const GCLProgram&, const GCLProgram&);
};

struct Item {
    enum class Kind { Command, Proc, Include };
    Kind kind = Kind::Command;
    Command command;
    Procedure procedure;
    std::string include_name;
    std::vector<Item> included; // resolved content

    friend bool operator==(const Item& a, const Item& b);
};

// Resolves an include target to its text; absence reported by nullopt.
using FileResolver = std::function<std::optional<std::string>(const std::string&)>;

GCLProgram parse_gcl(const std::string& text, const FileResolver& resolver = nullptr);

std::string print_gcl(const GCLProgram& program);
std::string print_gcl(const Procedure& procedure);

struct SceneObject {
    enum class Kind { Point, Line, Circle, Distance };
    Kind kind = Kind::Point;
    interp::NamedPoint a; // Point: itself; Line: endpoint; Circle: center
    interp::NamedPoint b; // Line: endpoint; Circle: through
    double value = 0;     // Distance
};

struct Scene {
    std::map<std::string, SceneObject> objects;
    std::vector<interp::DrawOp> draws;
    int frame_count = 0; // 0: no animation header seen
    int animation_step = 1;
    std::string hide_marker; // hide_layers_from operand, kept for round-trips
    interp::Rng rng{0};
    double tol_branch = 1e-6;
    double tol_check = 1e-9;

    int layer_count() const;
};

// Number of animation frames: declared frame_count, else a single frame.
int frame_total(const Scene& s);

Scene evaluate(const GCLProgram& program, std::uint64_t seed = 0);

// Scene-side entry points used by the interpretation machinery: execute one
// procedure call against an existing scene with call-by-name argument binding.
void execute_call(Scene& scene, const std::map<std::string, Procedure>& library,
                  const std::string& name, const std::vector<std::string>& args,
                  int layer);

struct Frame {
    int index = 1;        // 1-based
    int total = 1;
    bool highlight = true;

    // visible layers are 0 .. index-1; layer index-1 is highlighted
};

struct BBox {
    double min_x = 0, min_y = 0, max_x = 0, max_y = 0;
};

BBox bounding_box(const Scene& s);

// Draw ops visible in the given frame, highlight color applied.
std::vector<interp::DrawOp> frame_ops(const Scene& s, int frame_index);

// frame_index 0 renders everything with no highlight.
std::string render_svg(const Scene& s, int frame_index = 0, double scale = 10.0);

} // namespace geoproof::gcl

#endif
