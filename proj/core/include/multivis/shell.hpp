//---------------------------------------------------------------------------//
//! \file multivis/shell.hpp
//! \brief Command tree, line parser, macro runner and REPL.
//---------------------------------------------------------------------------//
#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "units.hpp"

namespace multivis
{
class VisManager;

enum class ParamKind
{
    string,
    integer,
    real,
    boolean,
    choice,
    unit,  //!< unit symbol of a category
    text,  //!< absorbs the rest of the line
};

char const* to_cstring(ParamKind);

struct ParamSpec
{
    std::string name;
    ParamKind kind{ParamKind::string};
    std::string default_value;
    bool omittable{false};
    std::optional<UnitCategory> unit_category;  //!< for ParamKind::unit
    std::vector<std::string> choices;  //!< for ParamKind::choice
};

//! Parsed, defaulted argument values keyed by parameter name.
class Args
{
  public:
    void set(std::string name, std::string value, bool given);

    std::string const& str(std::string_view name) const;
    long integer(std::string_view name) const;
    double real(std::string_view name) const;
    bool boolean(std::string_view name) const;
    //! True if the user supplied the value (not a default).
    bool given(std::string_view name) const;
    //! Unit factor of a unit parameter.
    double unit(std::string_view name) const;
    //! Value times the named unit parameter's factor.
    double quantity(std::string_view value, std::string_view unit_name) const;

  private:
    struct Entry
    {
        std::string value;
        bool given{false};
    };
    Entry const& entry(std::string_view name) const;
    std::map<std::string, Entry, std::less<>> values_;
};

//! Handler result: empty for success, otherwise a warning.
using CommandHandler = std::function<std::string(Args const&)>;

struct Command
{
    std::string path;  //!< "/vis/viewer/flush"
    std::string guidance;
    std::vector<ParamSpec> params;
    CommandHandler handler;
};

//! Error raised by parsing or by a command handler.
class CommandError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct CommandLine
{
    std::string path;
    std::vector<std::string> tokens;

    friend bool operator==(CommandLine const&, CommandLine const&) = default;
};

/*!
 * Split a line into path and argument tokens.
 *
 * `#` starts a comment outside double quotes; a blank line gives nullopt.
 * Quoted tokens keep their spaces.
 */
std::optional<CommandLine> tokenize(std::string_view line);
//! Text that tokenizes back to the same CommandLine.
std::string to_string(CommandLine const& cl);

//---------------------------------------------------------------------------//
class CommandTree
{
  public:
    //! Throws std::logic_error on a duplicate path or bad parameter order.
    void add(Command c);
    void remove_prefix(std::string_view prefix);
    Command const* find(std::string_view path) const;
    std::map<std::string, Command> const& commands() const { return commands_; }

    //! Bind tokens to parameters; throws CommandError on arity or type errors.
    Args bind(Command const& c, std::vector<std::string> const& tokens) const;

    //! Guidance and parameter listing for a command or a directory.
    std::string help(std::string_view prefix) const;
    //! Closest command or directory paths by edit distance.
    std::vector<std::string> suggest(std::string_view path, std::size_t n = 3) const;

  private:
    std::map<std::string, Command> commands_;
};

//---------------------------------------------------------------------------//
enum class Status
{
    success,
    warning,
    error,
};

struct CommandResult
{
    Status status{Status::success};
    std::string message;
};

/*!
 * Executes command lines against a visualisation manager.
 *
 * Errors are printed as "ERROR: ..." regardless of verbosity and counted.
 */
class Shell
{
  public:
    static constexpr int max_macro_depth = 8;

    Shell(VisManager& vis, std::ostream& out);

    CommandTree& tree() { return tree_; }
    VisManager& vis() { return vis_; }
    std::ostream& out() { return out_; }

    //! Execute one line; blank and comment lines succeed.
    CommandResult execute(std::string_view line);
    //! Run a macro; stops at the first error, reported as "file:line: ...".
    CommandResult execute_macro(std::filesystem::path const& path);
    //! Read-eval-print until "exit" or end of input.
    void repl(std::istream& in, bool show_prompt);

    int error_count() const { return errors_; }

    //! Keep an object alive as long as the shell (state shared by handlers).
    void retain(std::shared_ptr<void> obj) { retained_.push_back(std::move(obj)); }

  private:
    CommandResult run(std::string_view line);

    VisManager& vis_;
    std::ostream& out_;
    CommandTree tree_;
    int macro_depth_{0};
    int errors_{0};
    std::vector<std::shared_ptr<void>> retained_;
};

//! Install the /vis, /control and /run commands.
void install_commands(Shell& shell);

}  // namespace multivis
