#include "geoproof/gcl.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "geoproof/error.hpp"

namespace geoproof::gcl {

using interp::DrawOp;
using interp::GeoPoint;
using interp::NamedPoint;

bool operator==(const Item& a, const Item& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Item::Kind::Command: return a.command == b.command;
        case Item::Kind::Proc: return a.procedure == b.procedure;
        case Item::Kind::Include:
            return a.include_name == b.include_name && a.included == b.included;
    }
    return false;
}

bool operator==(const GCLProgram& a, const GCLProgram& b) { return a.items == b.items; }

// ---------------------------------------------------------------- lexing

namespace {

struct GToken {
    enum class Kind { Word, Number, LBrace, RBrace, Comment, End };
    Kind kind = Kind::End;
    std::string text;
    double number = 0;
    int line = 1;
};

class GLexer {
public:
    explicit GLexer(const std::string& text) : text_(text) { advance(); }
    const GToken& peek() const { return tok_; }
    GToken next() {
        GToken t = tok_;
        advance();
        return t;
    }
private:
    void skip_spaces() {
        while (pos_ < text_.size() &&
               isspace(static_cast<unsigned char>(text_[pos_])))
            bump();
    }

    void advance() {
        skip_spaces();
        tok_.line = line_;
        if (pos_ >= text_.size()) {
            tok_.kind = GToken::Kind::End;
            tok_.text.clear();
            return;
        }
        char c = text_[pos_];
        if (c == '%') {
            std::string body;
            while (pos_ < text_.size() && text_[pos_] != '\n') {
                body += text_[pos_];
                bump();
            }
            tok_.kind = GToken::Kind::Comment;
            tok_.text = body;
            return;
        }
        if (c == '{') {
            bump();
            tok_.kind = GToken::Kind::LBrace;
            tok_.text = "{";
            return;
        }
        if (c == '}') {
            bump();
            tok_.kind = GToken::Kind::RBrace;
            tok_.text = "}";
            return;
        }
        if (c == '-' || c == '+' || c == '.' || (c >= '0' && c <= '9')) {
            std::string num;
            while (pos_ < text_.size()) {
                char d = text_[pos_];
                if (d == '-' || d == '+') {
                    if (!num.empty()) break;
                } else if (!(d == '.' || (d >= '0' && d <= '9'))) {
                    break;
                }
                num += d;
                bump();
            }
            try {
                tok_.number = std::stod(num);
            } catch (...) {
                throw GclParseError(line_, "malformed number '" + num + "'");
            }
            tok_.kind = GToken::Kind::Number;
            tok_.text = num;
            return;
        }
        if (isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string word;
            while (pos_ < text_.size()) {
                char d = text_[pos_];
                if (!(isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '.')) break;
                word += d;
                bump();
            }
            tok_.kind = GToken::Kind::Word;
            tok_.text = word;
            return;
        }
        throw GclParseError(line_, std::string("unexpected character '") + c + "'");
    }

    void bump() {
        if (text_[pos_] == '\n') ++line_;
        ++pos_;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    GToken tok_;
};

struct CommandSpec {
    Command::Kind kind;
    // i = identifier, n = number; '?' after n marks an optional pair tail
    const char* shape;
};

const std::map<std::string, CommandSpec>& command_table() {
    static const std::map<std::string, CommandSpec> table = {
        {"point", {Command::Kind::Point, "inn??"}}, // name x y [x2 y2]
        {"towards", {Command::Kind::Towards, "iiin"}},
        {"midpoint", {Command::Kind::Midpoint, "iii"}},
        {"line", {Command::Kind::Line, "iii"}},
        {"circle", {Command::Kind::Circle, "iii"}},
        {"intersec2", {Command::Kind::Intersec2, "iiii"}},
        {"drawsegment", {Command::Kind::DrawSegment, "ii"}},
        {"drawline", {Command::Kind::DrawLine, "ii"}},
        {"drawcircle", {Command::Kind::DrawCircle, "i"}},
        {"cmark", {Command::Kind::CMark, "i"}},
        {"cmark_t", {Command::Kind::CMarkT, "i"}},
        {"cmark_b", {Command::Kind::CMarkB, "i"}},
        {"mark_t", {Command::Kind::MarkT, "i"}},
        {"distance", {Command::Kind::Distance, "iii"}},
        {"animation_frames", {Command::Kind::AnimationFrames, "nn"}},
        {"hide_layers_from", {Command::Kind::HideLayersFrom, "i"}},
        {"layer", {Command::Kind::Layer, "n"}},
        {"extend", {Command::Kind::Extend, "iiiii"}},
        {"randtowards", {Command::Kind::RandTowards, "iiinn"}},
        {"rightanglemark", {Command::Kind::RightAngleMark, "iii"}},
        {"tickmark", {Command::Kind::TickMark, "ii"}},
    };
    return table;
}

const char* command_name(Command::Kind kind) {
    for (const auto& [name, spec] : command_table())
        if (spec.kind == kind) return name.c_str();
    return "";
}

class GParser {
public:
    GParser(const std::string& text, const FileResolver& resolver,
            std::set<std::string>& include_stack)
        : lex_(text), resolver_(resolver), include_stack_(include_stack) {}

    std::vector<Item> parse_items() {
        std::vector<Item> out;
        while (lex_.peek().kind != GToken::Kind::End) out.push_back(parse_item());
        return out;
    }

private:
    Item parse_item() {
        const GToken& t = lex_.peek();
        if (t.kind == GToken::Kind::Comment) {
            Item item;
            item.kind = Item::Kind::Command;
            item.command.kind = Command::Kind::Comment;
            item.command.text = lex_.next().text;
            item.command.line = t.line;
            return item;
        }
        if (t.kind != GToken::Kind::Word)
            throw GclParseError(t.line, "expected a command, got '" + t.text + "'");
        if (t.text == "procedure") {
            Item item;
            item.kind = Item::Kind::Proc;
            item.procedure = parse_procedure();
            return item;
        }
        if (t.text == "call") {
            Item item;
            item.kind = Item::Kind::Command;
            item.command = parse_call();
            return item;
        }
        if (t.text == "include") {
            int line = t.line;
            lex_.next();
            if (lex_.peek().kind != GToken::Kind::Word)
                throw GclParseError(line, "include without a file name");
            std::string file = lex_.next().text;
            Item item;
            item.kind = Item::Kind::Include;
            item.include_name = file;
            if (!resolver_) throw GclParseError(line, "includes need a file resolver");
            if (include_stack_.count(file)) throw IncludeCycleError(file);
            auto text = resolver_(file);
            if (!text) throw GclParseError(line, "cannot resolve include '" + file + "'");
            include_stack_.insert(file);
            GParser sub(*text, resolver_, include_stack_);
            item.included = sub.parse_items();
            include_stack_.erase(file);
            return item;
        }
        Item item;
        item.kind = Item::Kind::Command;
        item.command = parse_command();
        return item;
    }

    Procedure parse_procedure() {
        GToken head = lex_.next(); // 'procedure'
        if (lex_.peek().kind != GToken::Kind::Word)
            throw GclParseError(head.line, "procedure: expected a name");
        Procedure proc;
        proc.line = head.line;
        proc.name = lex_.next().text;
        expect_brace(true, "procedure parameter list");
        while (lex_.peek().kind == GToken::Kind::Word) proc.params.push_back(lex_.next().text);
        expect_brace(false, "procedure parameter list");
        expect_brace(true, "procedure body");
        while (lex_.peek().kind != GToken::Kind::RBrace) {
            const GToken& t = lex_.peek();
            if (t.kind == GToken::Kind::End)
                throw GclParseError(head.line, "unterminated procedure body");
            if (t.kind == GToken::Kind::Comment) {
                Command c;
                c.kind = Command::Kind::Comment;
                c.text = lex_.next().text;
                c.line = t.line;
                proc.body.push_back(c);
                continue;
            }
            if (t.kind == GToken::Kind::Word && (t.text == "procedure" || t.text == "include"))
                throw GclParseError(t.line, t.text + " not allowed inside a procedure body");
            proc.body.push_back(parse_command());
        }
        lex_.next(); // '}'
        return proc;
    }

    Command parse_call() {
        GToken head = lex_.next(); // 'call'
        Command cmd;
        cmd.kind = Command::Kind::Call;
        cmd.line = head.line;
        if (lex_.peek().kind != GToken::Kind::Word)
            throw GclParseError(head.line, "call: expected a procedure name");
        cmd.args.push_back(lex_.next().text);
        expect_brace(true, "call argument list");
        while (lex_.peek().kind == GToken::Kind::Word) cmd.args.push_back(lex_.next().text);
        expect_brace(false, "call argument list");
        return cmd;
    }

    Command parse_command() {
        if (lex_.peek().text == "call") return parse_call();
        GToken head = lex_.next();
        auto it = command_table().find(head.text);
        if (it == command_table().end()) throw UnknownCommandError(head.text);
        Command cmd;
        cmd.kind = it->second.kind;
        cmd.line = head.line;
        const char* shape = it->second.shape;
        for (std::size_t i = 0; shape[i]; ++i) {
            if (shape[i] == '?') {
                if (lex_.peek().kind != GToken::Kind::Number) break;
                cmd.numbers.push_back(lex_.next().number);
                continue;
            }
            if (shape[i] == 'i') {
                if (lex_.peek().kind != GToken::Kind::Word)
                    throw GclParseError(head.line,
                                        std::string(head.text) + ": expected an identifier");
                cmd.args.push_back(lex_.next().text);
            } else {
                if (lex_.peek().kind != GToken::Kind::Number)
                    throw GclParseError(head.line, std::string(head.text) + ": expected a number");
                cmd.numbers.push_back(lex_.next().number);
            }
        }
        return cmd;
    }

    void expect_brace(bool open, const std::string& what) {
        auto kind = open ? GToken::Kind::LBrace : GToken::Kind::RBrace;
        if (lex_.peek().kind != kind)
            throw GclParseError(lex_.peek().line,
                                "expected '" + std::string(open ? "{" : "}") + "' in " + what);
        lex_.next();
    }

    GLexer lex_;
    const FileResolver& resolver_;
    std::set<std::string>& include_stack_;
};

} // namespace

GCLProgram parse_gcl(const std::string& text, const FileResolver& resolver) {
    std::set<std::string> stack;
    GParser parser(text, resolver, stack);
    GCLProgram program;
    program.items = parser.parse_items();
    return program;
}

// ---------------------------------------------------------------- printing

namespace {

std::string format_number(double v) {
    char buf[64];
    if (v == static_cast<long long>(v) && std::abs(v) < 1e15) {
        std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(v));
    } else {
        std::snprintf(buf, sizeof buf, "%.10g", v);
    }
    return buf;
}

void print_command(const Command& cmd, std::string& out, int indent) {
    out.append(indent, ' ');
    if (cmd.kind == Command::Kind::Comment) {
        out += cmd.text;
        out += "\n";
        return;
    }
    if (cmd.kind == Command::Kind::Call) {
        out += "call " + cmd.args[0] + " {";
        for (std::size_t i = 1; i < cmd.args.size(); ++i) out += " " + cmd.args[i];
        out += " }\n";
        return;
    }
    out += command_name(cmd.kind);
    std::size_t ai = 0, ni = 0;
    auto it = command_table().find(command_name(cmd.kind));
    const char* shape = it->second.shape;
    for (std::size_t i = 0; shape[i]; ++i) {
        if (shape[i] == 'i') {
            if (ai < cmd.args.size()) out += " " + cmd.args[ai++];
        } else { // 'n' or '?'
            if (ni < cmd.numbers.size()) out += " " + format_number(cmd.numbers[ni++]);
        }
    }
    out += "\n";
}

void print_items(const std::vector<Item>& items, std::string& out) {
    for (const Item& item : items) {
        switch (item.kind) {
            case Item::Kind::Command:
                print_command(item.command, out, 0);
                break;
            case Item::Kind::Include:
                out += "include " + item.include_name + "\n";
                break;
            case Item::Kind::Proc:
                out += print_gcl(item.procedure);
                break;
        }
    }
}

} // namespace

std::string print_gcl(const Procedure& procedure) {
    std::string out = "procedure " + procedure.name + " {";
    for (const auto& p : procedure.params) out += " " + p;
    out += " } {\n";
    for (const Command& cmd : procedure.body) print_command(cmd, out, 2);
    out += "}\n";
    return out;
}

std::string print_gcl(const GCLProgram& program) {
    std::string out;
    print_items(program.items, out);
    return out;
}

// ---------------------------------------------------------------- evaluation

namespace {

// Call-by-name frames: parameters alias caller names; all other names are
// locals of the invocation.
struct Env {
    Scene& scene;
    struct Frame {
        std::map<std::string, std::string> aliases;
        std::map<std::string, SceneObject> locals;
    };
    std::vector<Frame> stack;

    const SceneObject* find(const std::string& name, std::size_t depth) const {
        if (depth == stack.size()) {
            auto it = scene.objects.find(name);
            return it == scene.objects.end() ? nullptr : &it->second;
        }
        const Frame& frame = stack[stack.size() - 1 - depth];
        auto alias = frame.aliases.find(name);
        if (alias != frame.aliases.end()) return find(alias->second, depth + 1);
        auto local = frame.locals.find(name);
        if (local != frame.locals.end()) return &local->second;
        return nullptr;
    }

    const SceneObject& read(const std::string& name, int line) const {
        const SceneObject* obj = find(name, 0);
        if (!obj) throw UndefinedNameError(name + " (line " + std::to_string(line) + ")");
        return *obj;
    }

    void write(const std::string& name, SceneObject obj, std::size_t depth = 0) {
        if (depth == stack.size()) {
            scene.objects[name] = std::move(obj);
            return;
        }
        Frame& frame = stack[stack.size() - 1 - depth];
        auto alias = frame.aliases.find(name);
        if (alias != frame.aliases.end()) {
            write(alias->second, std::move(obj), depth + 1);
            return;
        }
        frame.locals[name] = std::move(obj);
    }

    std::string resolved_name(const std::string& name, std::size_t depth = 0) const {
        if (depth == stack.size()) return name;
        const Frame& frame = stack[stack.size() - 1 - depth];
        auto alias = frame.aliases.find(name);
        if (alias != frame.aliases.end()) return resolved_name(alias->second, depth + 1);
        return name;
    }
};

struct Evaluator {
    Scene& scene;
    std::map<std::string, Procedure> procedures;
    Env env{scene};
    int current_layer = 0;

    NamedPoint point_of(const std::string& name, int line) {
        const SceneObject& obj = env.read(name, line);
        if (obj.kind != SceneObject::Kind::Point)
            throw UndefinedNameError(name + " is not a point (line " + std::to_string(line) + ")");
        return {env.resolved_name(name), obj.a.at};
    }

    void define_point(const std::string& name, GeoPoint at) {
        SceneObject obj;
        obj.kind = SceneObject::Kind::Point;
        obj.a.at = at;
        env.write(name, std::move(obj));
    }

    void draw(DrawOp op) {
        op.layer = current_layer;
        scene.draws.push_back(std::move(op));
    }

    void run_items(const std::vector<Item>& items) {
        for (const Item& item : items) {
            switch (item.kind) {
                case Item::Kind::Command:
                    run_command(item.command);
                    break;
                case Item::Kind::Include:
                    run_items(item.included);
                    break;
                case Item::Kind::Proc: {
                    auto [it, fresh] = procedures.emplace(item.procedure.name, item.procedure);
                    if (!fresh && !(it->second == item.procedure))
                        throw GclParseError(item.procedure.line,
                                            "duplicate procedure " + item.procedure.name);
                    break;
                }
            }
        }
    }

    void call(const std::string& name, const std::vector<std::string>& args, int line) {
        auto it = procedures.find(name);
        if (it == procedures.end()) throw UndefinedNameError("procedure " + name);
        const Procedure& proc = it->second;
        if (proc.params.size() != args.size())
            throw GclParseError(line, "call " + name + ": expected " +
                                          std::to_string(proc.params.size()) + " arguments, got " +
                                          std::to_string(args.size()));
        Env::Frame frame;
        for (std::size_t i = 0; i < args.size(); ++i) frame.aliases[proc.params[i]] = args[i];
        env.stack.push_back(std::move(frame));
        for (const Command& cmd : proc.body) run_command(cmd);
        env.stack.pop_back();
    }

    void run_command(const Command& cmd) {
        using K = Command::Kind;
        switch (cmd.kind) {
            case K::Comment:
                return;
            case K::Point: {
                if (cmd.numbers.size() != 2 && cmd.numbers.size() != 4)
                    throw GclParseError(cmd.line, "point: expected 2 or 4 coordinates");
                define_point(cmd.args[0], {cmd.numbers[0], cmd.numbers[1]});
                return;
            }
            case K::Towards: {
                GeoPoint a = point_of(cmd.args[1], cmd.line).at;
                GeoPoint b = point_of(cmd.args[2], cmd.line).at;
                define_point(cmd.args[0], interp::towards(a, b, cmd.numbers[0]));
                return;
            }
            case K::RandTowards: {
                GeoPoint a = point_of(cmd.args[1], cmd.line).at;
                GeoPoint b = point_of(cmd.args[2], cmd.line).at;
                double t0 = cmd.numbers[0], t1 = cmd.numbers[1];
                double t = t0 + (t1 - t0) * scene.rng.next_unit();
                define_point(cmd.args[0], interp::towards(a, b, t));
                return;
            }
            case K::Midpoint: {
                GeoPoint a = point_of(cmd.args[1], cmd.line).at;
                GeoPoint b = point_of(cmd.args[2], cmd.line).at;
                define_point(cmd.args[0], interp::midpoint(a, b));
                return;
            }
            case K::Extend: {
                GeoPoint a = point_of(cmd.args[1], cmd.line).at;
                GeoPoint b = point_of(cmd.args[2], cmd.line).at;
                GeoPoint p = point_of(cmd.args[3], cmd.line).at;
                GeoPoint q = point_of(cmd.args[4], cmd.line).at;
                define_point(cmd.args[0],
                             interp::extend(a, b, interp::distance(p, q), scene.tol_branch));
                return;
            }
            case K::Line: {
                SceneObject obj;
                obj.kind = SceneObject::Kind::Line;
                obj.a = point_of(cmd.args[1], cmd.line);
                obj.b = point_of(cmd.args[2], cmd.line);
                env.write(cmd.args[0], std::move(obj));
                return;
            }
            case K::Circle: {
                SceneObject obj;
                obj.kind = SceneObject::Kind::Circle;
                obj.a = point_of(cmd.args[1], cmd.line);
                obj.b = point_of(cmd.args[2], cmd.line);
                env.write(cmd.args[0], std::move(obj));
                return;
            }
            case K::Intersec2: {
                const SceneObject& o1 = env.read(cmd.args[2], cmd.line);
                const SceneObject& o2 = env.read(cmd.args[3], cmd.line);
                GeoPoint first, second;
                intersect(o1, o2, first, second, cmd.line);
                define_point(cmd.args[0], first);
                define_point(cmd.args[1], second);
                return;
            }
            case K::Distance: {
                GeoPoint a = point_of(cmd.args[1], cmd.line).at;
                GeoPoint b = point_of(cmd.args[2], cmd.line).at;
                SceneObject obj;
                obj.kind = SceneObject::Kind::Distance;
                obj.value = interp::distance(a, b);
                env.write(cmd.args[0], std::move(obj));
                return;
            }
            case K::DrawSegment:
            case K::DrawLine: {
                DrawOp op;
                op.kind = DrawOp::Kind::Segment;
                op.a = point_of(cmd.args[0], cmd.line);
                op.b = point_of(cmd.args[1], cmd.line);
                draw(std::move(op));
                return;
            }
            case K::DrawCircle: {
                const SceneObject& obj = env.read(cmd.args[0], cmd.line);
                if (obj.kind != SceneObject::Kind::Circle)
                    throw UndefinedNameError(cmd.args[0] + " is not a circle (line " +
                                             std::to_string(cmd.line) + ")");
                DrawOp op;
                op.kind = DrawOp::Kind::Circle;
                op.a = obj.a;
                op.b = obj.b;
                draw(std::move(op));
                return;
            }
            case K::CMark:
            case K::CMarkT:
            case K::CMarkB:
            case K::MarkT: {
                DrawOp op;
                op.kind = DrawOp::Kind::MarkPoint;
                op.a = point_of(cmd.args[0], cmd.line);
                op.style = cmd.kind == K::MarkT ? DrawOp::MarkStyle::Label
                                                : DrawOp::MarkStyle::Circled;
                op.placement = cmd.kind == K::CMarkT || cmd.kind == K::MarkT
                                   ? DrawOp::Placement::Above
                                   : (cmd.kind == K::CMarkB ? DrawOp::Placement::Below
                                                            : DrawOp::Placement::Right);
                draw(std::move(op));
                return;
            }
            case K::RightAngleMark: {
                DrawOp op;
                op.kind = DrawOp::Kind::RightAngleMark;
                op.a = point_of(cmd.args[0], cmd.line);
                op.b = point_of(cmd.args[1], cmd.line);
                op.c = point_of(cmd.args[2], cmd.line);
                draw(std::move(op));
                return;
            }
            case K::TickMark: {
                GeoPoint a = point_of(cmd.args[0], cmd.line).at;
                GeoPoint b = point_of(cmd.args[1], cmd.line).at;
                GeoPoint m = interp::midpoint(a, b);
                double len = interp::distance(a, b);
                if (len <= scene.tol_branch)
                    throw DegenerateInputError("tickmark on a degenerate segment");
                GeoPoint u = (1.0 / len) * (b - a);
                GeoPoint n{-u.y, u.x};
                double s = 0.6;
                GeoPoint tip = m + s * u;
                GeoPoint w1 = m + (-s) * u + s * n;
                GeoPoint w2 = m + (-s) * u + (-s) * n;
                DrawOp op1;
                op1.kind = DrawOp::Kind::Segment;
                op1.a = {"", w1};
                op1.b = {"", tip};
                draw(std::move(op1));
                DrawOp op2;
                op2.kind = DrawOp::Kind::Segment;
                op2.a = {"", w2};
                op2.b = {"", tip};
                draw(std::move(op2));
                return;
            }
            case K::Call:
                call(cmd.args[0], {cmd.args.begin() + 1, cmd.args.end()}, cmd.line);
                return;
            case K::AnimationFrames:
                scene.frame_count = static_cast<int>(cmd.numbers[0]);
                scene.animation_step = static_cast<int>(cmd.numbers[1]);
                return;
            case K::HideLayersFrom:
                scene.hide_marker = cmd.args[0];
                return;
            case K::Layer:
                current_layer = static_cast<int>(cmd.numbers[0]);
                return;
        }
    }

    void intersect(const SceneObject& o1, const SceneObject& o2, GeoPoint& first,
                   GeoPoint& second, int line) {
        using OK = SceneObject::Kind;
        if (o1.kind == OK::Circle && o2.kind == OK::Circle) {
            first = interp::circle_circle(o1.a.at, o1.b.at, o2.a.at, o2.b.at,
                                          interp::WhichIntersection::First, scene.tol_branch);
            second = interp::circle_circle(o1.a.at, o1.b.at, o2.a.at, o2.b.at,
                                           interp::WhichIntersection::Second, scene.tol_branch);
            return;
        }
        if (o1.kind == OK::Line && o2.kind == OK::Line) {
            first = interp::line_line(o1.a.at, o1.b.at, o2.a.at, o2.b.at, scene.tol_branch);
            second = first;
            return;
        }
        if (o1.kind == OK::Line && o2.kind == OK::Circle) {
            first = interp::line_circle(o1.a.at, o1.b.at, o2.a.at, o2.b.at,
                                        interp::WhichIntersection::First, scene.tol_branch);
            second = interp::line_circle(o1.a.at, o1.b.at, o2.a.at, o2.b.at,
                                         interp::WhichIntersection::Second, scene.tol_branch);
            return;
        }
        if (o1.kind == OK::Circle && o2.kind == OK::Line) {
            first = interp::line_circle(o2.a.at, o2.b.at, o1.a.at, o1.b.at,
                                        interp::WhichIntersection::First, scene.tol_branch);
            second = interp::line_circle(o2.a.at, o2.b.at, o1.a.at, o1.b.at,
                                         interp::WhichIntersection::Second, scene.tol_branch);
            return;
        }
        throw UndefinedNameError("intersec2 operands must be lines or circles (line " +
                                 std::to_string(line) + ")");
    }
};

} // namespace

int Scene::layer_count() const {
    int max_layer = -1;
    for (const DrawOp& op : draws) max_layer = std::max(max_layer, op.layer);
    return max_layer + 1;
}

int frame_total(const Scene& s) { return s.frame_count > 0 ? s.frame_count : 1; }

Scene evaluate(const GCLProgram& program, std::uint64_t seed) {
    Scene scene;
    scene.rng = interp::Rng(seed);
    Evaluator ev{scene};
    ev.run_items(program.items);
    return scene;
}

void execute_call(Scene& scene, const std::map<std::string, Procedure>& library,
                  const std::string& name, const std::vector<std::string>& args, int layer) {
    Evaluator ev{scene};
    ev.procedures = library;
    ev.current_layer = layer;
    ev.call(name, args, 0);
}

// ---------------------------------------------------------------- rendering

namespace {

constexpr double kMarkRadius = 2.5;
constexpr double kLabelOffset = 3.4;
constexpr double kFontSize = 3.2;
constexpr double kRightAngleSize = 1.8;

void grow(BBox& box, GeoPoint p, double pad) {
    box.min_x = std::min(box.min_x, p.x - pad);
    box.max_x = std::max(box.max_x, p.x + pad);
    box.min_y = std::min(box.min_y, p.y - pad);
    box.max_y = std::max(box.max_y, p.y + pad);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v + 0.0); // normalize -0
    return buf;
}

} // namespace

BBox bounding_box(const Scene& s) {
    BBox box{1e300, 1e300, -1e300, -1e300};
    bool any = false;
    for (const DrawOp& op : s.draws) {
        any = true;
        switch (op.kind) {
            case DrawOp::Kind::MarkPoint:
                grow(box, op.a.at, kMarkRadius + kLabelOffset);
                break;
            case DrawOp::Kind::Segment:
                grow(box, op.a.at, 0);
                grow(box, op.b.at, 0);
                break;
            case DrawOp::Kind::Circle:
                grow(box, op.a.at, interp::distance(op.a.at, op.b.at));
                break;
            case DrawOp::Kind::RightAngleMark:
                grow(box, op.a.at, 2 * kRightAngleSize);
                break;
        }
    }
    if (!any) return {0, 0, 10, 10};
    double margin = 0.05 * std::max(box.max_x - box.min_x, box.max_y - box.min_y);
    margin = std::max(margin, 0.5);
    box.min_x -= margin;
    box.min_y -= margin;
    box.max_x += margin;
    box.max_y += margin;
    return box;
}

std::vector<DrawOp> frame_ops(const Scene& s, int frame_index) {
    std::vector<DrawOp> out;
    for (const DrawOp& op : s.draws) {
        if (frame_index > 0 && op.layer >= frame_index) continue;
        DrawOp copy = op;
        copy.color = (frame_index > 0 && op.layer == frame_index - 1)
                         ? DrawOp::ColorRole::Highlight
                         : DrawOp::ColorRole::Construction;
        out.push_back(std::move(copy));
    }
    return out;
}

std::string render_svg(const Scene& s, int frame_index, double scale) {
    BBox box = bounding_box(s);
    double width = box.max_x - box.min_x;
    double height = box.max_y - box.min_y;
    // model y-up -> svg y-down
    auto X = [&](double x) { return x; };
    auto Y = [&](double y) { return -y; };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" +
           fmt(box.min_x) + " " + fmt(-box.max_y) + " " + fmt(width) + " " + fmt(height) +
           "\" width=\"" + fmt(width * scale) + "\" height=\"" + fmt(height * scale) + "\">\n";

    for (const DrawOp& op : frame_ops(s, frame_index)) {
        const char* color = op.color == DrawOp::ColorRole::Highlight ? "red" : "black";
        switch (op.kind) {
            case DrawOp::Kind::Segment:
                svg += "  <line x1=\"" + fmt(X(op.a.at.x)) + "\" y1=\"" + fmt(Y(op.a.at.y)) +
                       "\" x2=\"" + fmt(X(op.b.at.x)) + "\" y2=\"" + fmt(Y(op.b.at.y)) +
                       "\" stroke=\"" + color + "\" stroke-width=\"0.1\"/>\n";
                break;
            case DrawOp::Kind::Circle:
                svg += "  <circle cx=\"" + fmt(X(op.a.at.x)) + "\" cy=\"" + fmt(Y(op.a.at.y)) +
                       "\" r=\"" + fmt(interp::distance(op.a.at, op.b.at)) +
                       "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"0.1\"/>\n";
                break;
            case DrawOp::Kind::MarkPoint: {
                if (op.style == DrawOp::MarkStyle::Circled) {
                    svg += "  <circle cx=\"" + fmt(X(op.a.at.x)) + "\" cy=\"" +
                           fmt(Y(op.a.at.y)) + "\" r=\"" + fmt(kMarkRadius) +
                           "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"0.1\"/>\n";
                }
                if (!op.a.name.empty()) {
                    double lx = op.a.at.x, ly = op.a.at.y;
                    const char* anchor = "start";
                    switch (op.placement) {
                        case DrawOp::Placement::Above:
                            ly += kLabelOffset;
                            anchor = "middle";
                            break;
                        case DrawOp::Placement::Below:
                            ly -= kLabelOffset;
                            anchor = "middle";
                            break;
                        case DrawOp::Placement::Right:
                            lx += kLabelOffset;
                            break;
                    }
                    svg += "  <text x=\"" + fmt(X(lx)) + "\" y=\"" + fmt(Y(ly)) +
                           "\" font-size=\"" + fmt(kFontSize) +
                           "\" font-family=\"serif\" font-style=\"italic\" text-anchor=\"" +
                           anchor + "\" fill=\"" + color + "\">" + op.a.name + "</text>\n";
                }
                break;
            }
            case DrawOp::Kind::RightAngleMark: {
                GeoPoint v = op.a.at;
                GeoPoint da = op.b.at - v;
                GeoPoint db = op.c.at - v;
                double na = interp::norm(da), nb = interp::norm(db);
                if (na <= 0 || nb <= 0) break;
                GeoPoint ua = (kRightAngleSize / na) * da;
                GeoPoint ub = (kRightAngleSize / nb) * db;
                GeoPoint p1 = v + ua;
                GeoPoint p2 = v + ua + ub;
                GeoPoint p3 = v + ub;
                svg += "  <polyline points=\"" + fmt(X(p1.x)) + "," + fmt(Y(p1.y)) + " " +
                       fmt(X(p2.x)) + "," + fmt(Y(p2.y)) + " " + fmt(X(p3.x)) + "," +
                       fmt(Y(p3.y)) + "\" fill=\"none\" stroke=\"" + color +
                       "\" stroke-width=\"0.1\"/>\n";
                break;
            }
        }
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace geoproof::gcl
