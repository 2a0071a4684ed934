//---------------------------------------------------------------------------//
//! \file shell.cpp
//---------------------------------------------------------------------------//
#include "multivis/shell.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "multivis/kernel.hpp"

namespace multivis
{
char const* to_cstring(ParamKind k)
{
    switch (k)
    {
        case ParamKind::string:
            return "string";
        case ParamKind::integer:
            return "int";
        case ParamKind::real:
            return "double";
        case ParamKind::boolean:
            return "bool";
        case ParamKind::choice:
            return "choice";
        case ParamKind::unit:
            return "unit";
        case ParamKind::text:
            return "text";
    }
    return "?";
}

//---------------------------------------------------------------------------//
// Args
//---------------------------------------------------------------------------//
void Args::set(std::string name, std::string value, bool given)
{
    values_[std::move(name)] = {std::move(value), given};
}

Args::Entry const& Args::entry(std::string_view name) const
{
    auto it = values_.find(name);
    if (it == values_.end())
        throw std::logic_error("no parameter \"" + std::string(name) + "\"");
    return it->second;
}

std::string const& Args::str(std::string_view name) const
{
    return entry(name).value;
}

long Args::integer(std::string_view name) const
{
    return std::stol(entry(name).value);
}

double Args::real(std::string_view name) const
{
    return std::stod(entry(name).value);
}

bool Args::boolean(std::string_view name) const
{
    return entry(name).value == "true";
}

bool Args::given(std::string_view name) const
{
    return entry(name).given;
}

double Args::unit(std::string_view name) const
{
    auto u = find_unit(entry(name).value);
    if (!u)
        throw CommandError("unknown unit \"" + entry(name).value + "\"");
    return u->value;
}

double Args::quantity(std::string_view value, std::string_view unit_name) const
{
    return real(value) * unit(unit_name);
}

//---------------------------------------------------------------------------//
// Tokenizing
//---------------------------------------------------------------------------//
std::optional<CommandLine> tokenize(std::string_view line)
{
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < line.size())
    {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        if (i >= line.size() || line[i] == '#')
            break;
        std::string tok;
        if (line[i] == '"')
        {
            ++i;
            while (i < line.size() && line[i] != '"')
                tok += line[i++];
            if (i >= line.size())
                throw CommandError("unterminated quote");
            ++i;
        }
        else
        {
            while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
                tok += line[i++];
        }
        tokens.push_back(std::move(tok));
    }
    if (tokens.empty())
        return std::nullopt;
    CommandLine cl;
    cl.path = std::move(tokens.front());
    cl.tokens.assign(std::make_move_iterator(tokens.begin() + 1),
                     std::make_move_iterator(tokens.end()));
    return cl;
}

std::string to_string(CommandLine const& cl)
{
    std::string out = cl.path;
    for (auto const& t : cl.tokens)
    {
        bool quote = t.empty() || t.front() == '#' || t.front() == '"'
                     || std::any_of(t.begin(), t.end(), [](char c) {
                            return std::isspace(static_cast<unsigned char>(c));
                        });
        out += ' ';
        out += quote ? "\"" + t + "\"" : t;
    }
    return out;
}

//---------------------------------------------------------------------------//
// CommandTree
//---------------------------------------------------------------------------//
void CommandTree::add(Command c)
{
    bool seen_omittable = false;
    for (auto const& p : c.params)
    {
        if (p.omittable)
            seen_omittable = true;
        else if (seen_omittable)
            throw std::logic_error(c.path + ": mandatory parameter \"" + p.name
                                   + "\" follows an omittable one");
    }
    for (std::size_t i = 0; i + 1 < c.params.size(); ++i)
    {
        if (c.params[i].kind == ParamKind::text)
            throw std::logic_error(c.path + ": text parameter must be last");
    }
    std::string path = c.path;
    if (!commands_.emplace(path, std::move(c)).second)
        throw std::logic_error("duplicate command " + path);
}

void CommandTree::remove_prefix(std::string_view prefix)
{
    for (auto it = commands_.begin(); it != commands_.end();)
    {
        if (it->first.rfind(prefix, 0) == 0)
            it = commands_.erase(it);
        else
            ++it;
    }
}

Command const* CommandTree::find(std::string_view path) const
{
    auto it = commands_.find(std::string(path));
    return it == commands_.end() ? nullptr : &it->second;
}

namespace
{
std::string lower(std::string s)
{
    for (auto& c : s)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::string check_value(Command const& c, ParamSpec const& p, std::string const& tok)
{
    auto fail = [&](std::string const& why) {
        return CommandError(c.path + ": parameter \"" + p.name + "\": " + why);
    };
    switch (p.kind)
    {
        case ParamKind::string:
        case ParamKind::text:
            return tok;
        case ParamKind::integer:
        {
            long v = 0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc{} || ptr != tok.data() + tok.size())
                throw fail("\"" + tok + "\" is not an integer");
            return tok;
        }
        case ParamKind::real:
        {
            char* end = nullptr;
            std::strtod(tok.c_str(), &end);
            if (tok.empty() || end != tok.c_str() + tok.size())
                throw fail("\"" + tok + "\" is not a number");
            return tok;
        }
        case ParamKind::boolean:
        {
            std::string l = lower(tok);
            if (l == "true" || l == "1")
                return "true";
            if (l == "false" || l == "0")
                return "false";
            throw fail("\"" + tok + "\" is not a boolean");
        }
        case ParamKind::choice:
        {
            std::vector<std::string> matches;
            for (auto const& ch : p.choices)
            {
                if (ch == tok)
                    return ch;
                if (ch.rfind(tok, 0) == 0)
                    matches.push_back(ch);
            }
            if (matches.size() == 1)
                return matches.front();
            std::string list;
            for (auto const& ch : p.choices)
                list += (list.empty() ? "" : ", ") + ch;
            throw fail("\"" + tok + "\" is not one of " + list);
        }
        case ParamKind::unit:
        {
            if (find_unit(tok, p.unit_category))
                return tok;
            std::string list;
            for (auto s : unit_symbols(*p.unit_category))
                list += (list.empty() ? "" : " ") + std::string(s);
            throw fail("\"" + tok + "\" is not a " + to_cstring(*p.unit_category)
                       + " unit (" + list + ")");
        }
    }
    return tok;
}
}  // namespace

Args CommandTree::bind(Command const& c, std::vector<std::string> const& tokens) const
{
    Args args;
    bool text_last = !c.params.empty() && c.params.back().kind == ParamKind::text;
    if (!text_last && tokens.size() > c.params.size())
    {
        throw CommandError(c.path + ": too many parameters (at most "
                           + std::to_string(c.params.size()) + ")");
    }
    bool any_given = false;
    for (std::size_t i = 0; i < c.params.size(); ++i)
    {
        auto const& p = c.params[i];
        std::optional<std::string> tok;
        if (p.kind == ParamKind::text && i < tokens.size())
        {
            std::string joined;
            for (std::size_t j = i; j < tokens.size(); ++j)
                joined += (j > i ? " " : "") + tokens[j];
            tok = joined;
        }
        else if (i < tokens.size())
        {
            tok = tokens[i];
        }

        if (tok && *tok != "!")
        {
            args.set(p.name, check_value(c, p, *tok), true);
            any_given = true;
            continue;
        }
        if (!p.omittable)
        {
            throw CommandError(c.path + ": parameter \"" + p.name
                               + (tok ? "\" is not omittable" : "\" is missing"));
        }
        if (p.kind == ParamKind::unit && p.unit_category == UnitCategory::length && any_given)
        {
            throw CommandError(c.path + ": length values need an explicit unit");
        }
        args.set(p.name, p.default_value, false);
    }
    return args;
}

namespace
{
std::string signature(ParamSpec const& p)
{
    std::string s = "<" + p.name + ":";
    if (p.kind == ParamKind::unit && p.unit_category)
        s += std::string("unit(") + to_cstring(*p.unit_category) + ")";
    else
        s += to_cstring(p.kind);
    if (p.omittable)
        s += "=" + (p.default_value.empty() ? std::string("\"\"") : p.default_value);
    return s + ">";
}

std::size_t edit_distance(std::string_view a, std::string_view b)
{
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j)
        row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i)
    {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j)
        {
            std::size_t up = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] != b[j - 1])});
            diag = up;
        }
    }
    return row[b.size()];
}
}  // namespace

std::string CommandTree::help(std::string_view prefix_in) const
{
    std::string prefix(prefix_in.empty() ? "/" : prefix_in);
    std::ostringstream os;
    if (Command const* c = find(prefix))
    {
        os << "Command " << c->path << '\n';
        if (!c->guidance.empty())
            os << "  " << c->guidance << '\n';
        for (auto const& p : c->params)
        {
            os << "  Parameter " << p.name << ": " << to_cstring(p.kind);
            if (p.kind == ParamKind::unit && p.unit_category)
            {
                os << " (" << to_cstring(*p.unit_category) << "; candidates:";
                for (auto s : unit_symbols(*p.unit_category))
                    os << ' ' << s;
                os << ')';
            }
            if (!p.choices.empty())
            {
                os << " (candidates:";
                for (auto const& ch : p.choices)
                    os << ' ' << ch;
                os << ')';
            }
            if (p.omittable)
                os << ", omittable, default " << (p.default_value.empty() ? "\"\"" : p.default_value);
            os << '\n';
        }
        return os.str();
    }
    if (prefix.back() != '/')
        prefix += '/';
    bool any = false;
    for (auto const& [path, c] : commands_)
    {
        if (path.rfind(prefix, 0) != 0)
            continue;
        any = true;
        os << path;
        for (auto const& p : c.params)
            os << ' ' << signature(p);
        os << '\n';
        if (!c.guidance.empty())
            os << "    " << c.guidance << '\n';
    }
    if (!any)
    {
        std::string msg = "no command or directory \"" + std::string(prefix_in) + "\"";
        auto s = suggest(prefix_in, 1);
        if (!s.empty())
            msg += "; did you mean " + s.front() + "?";
        throw CommandError(msg);
    }
    return os.str();
}

std::vector<std::string> CommandTree::suggest(std::string_view path, std::size_t n) const
{
    std::set<std::string> candidates;
    for (auto const& [p, c] : commands_)
    {
        candidates.insert(p);
        for (auto pos = p.find('/', 1); pos != std::string::npos; pos = p.find('/', pos + 1))
            candidates.insert(p.substr(0, pos));
    }
    std::vector<std::pair<std::size_t, std::string>> scored;
    for (auto const& c : candidates)
        scored.emplace_back(edit_distance(path, c), c);
    std::stable_sort(scored.begin(), scored.end(),
                     [](auto const& a, auto const& b) { return a.first < b.first; });
    std::vector<std::string> result;
    for (std::size_t i = 0; i < std::min(n, scored.size()); ++i)
        result.push_back(scored[i].second);
    return result;
}

//---------------------------------------------------------------------------//
// Shell
//---------------------------------------------------------------------------//
Shell::Shell(VisManager& vis, std::ostream& out) : vis_{vis}, out_{out}
{
    install_commands(*this);
}

CommandResult Shell::run(std::string_view line)
{
    try
    {
        auto cl = tokenize(line);
        if (!cl)
            return {};
        if (cl->path == "help")
        {
            out_ << tree_.help(cl->tokens.empty() ? "/" : cl->tokens.front());
            return {};
        }
        Command const* c = tree_.find(cl->path);
        if (!c)
        {
            std::string msg = "command not found: " + cl->path;
            auto s = tree_.suggest(cl->path, 1);
            if (!s.empty())
                msg += "; did you mean " + s.front() + "?";
            return {Status::error, msg};
        }
        Args args = tree_.bind(*c, cl->tokens);
        std::string warning = c->handler(args);
        if (!warning.empty())
            return {Status::warning, warning};
        return {};
    }
    catch (std::exception const& e)
    {
        return {Status::error, e.what()};
    }
}

CommandResult Shell::execute(std::string_view line)
{
    CommandResult r = run(line);
    if (r.status == Status::error)
    {
        ++errors_;
        out_ << "ERROR: " << r.message << '\n';
    }
    else if (r.status == Status::warning)
    {
        vis_.warning(r.message);
    }
    return r;
}

CommandResult Shell::execute_macro(std::filesystem::path const& path)
{
    if (macro_depth_ >= max_macro_depth)
    {
        return {Status::error,
                "macro nesting deeper than " + std::to_string(max_macro_depth) + " at \""
                    + path.string() + "\""};
    }
    std::ifstream in(path);
    if (!in)
        return {Status::error, "cannot open macro \"" + path.string() + "\""};

    struct DepthGuard
    {
        int& d;
        explicit DepthGuard(int& depth) : d{depth} { ++d; }
        ~DepthGuard() { --d; }
    } guard{macro_depth_};

    std::string line;
    int number = 0;
    while (std::getline(in, line))
    {
        ++number;
        CommandResult r = run(line);
        if (r.status == Status::error)
            return {Status::error, path.string() + ":" + std::to_string(number) + ": " + r.message};
        if (r.status == Status::warning)
            vis_.warning(r.message);
    }
    return {};
}

void Shell::repl(std::istream& in, bool show_prompt)
{
    std::string line;
    while (true)
    {
        if (show_prompt)
            out_ << "vis> " << std::flush;
        if (!std::getline(in, line))
            break;
        auto cl = tokenize(line);
        if (cl && (cl->path == "exit" || cl->path == "quit"))
            break;
        execute(line);
    }
}

}  // namespace multivis
