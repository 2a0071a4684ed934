//---------------------------------------------------------------------------//
//! \file multivis.cpp
//! \brief Command-line front end: load geometry and events, run a macro,
//! then either exit (batch) or read commands interactively.
//---------------------------------------------------------------------------//
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "multivis/events.hpp"
#include "multivis/example_detector.hpp"
#include "multivis/geometry_io.hpp"
#include "multivis/kernel.hpp"
#include "multivis/shell.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"multivis: detector and event visualisation shell"};
    std::string geometry_file;
    std::string events_file;
    std::string macro_file;
    std::string out_dir = ".";
    bool batch = false;
    int threads = 0;
    app.add_option("--geometry", geometry_file, "Geometry JSON file (default: built-in B1 detector)")
        ->check(CLI::ExistingFile);
    app.add_option("--events", events_file, "Line-delimited event file")->check(CLI::ExistingFile);
    app.add_option("--macro", macro_file, "Macro to execute at start-up");
    app.add_flag("--batch", batch, "Exit after the macro instead of prompting");
    app.add_option("--out-dir", out_dir, "Directory for viewer output files");
    app.add_option("--threads", threads, "Ray tracer worker threads (0: hardware)");
    CLI11_PARSE(app, argc, argv);

    using namespace multivis;
    VisManager vis(std::cout);
    try
    {
        vis.register_builtin_systems();
        vis.set_output_directory(out_dir);
        vis.set_render_threads(threads);
        vis.set_detector(geometry_file.empty() ? make_b1_detector() : load_geometry(geometry_file));
        if (!events_file.empty())
            vis.load_events(ingest_events(events_file));
    }
    catch (std::exception const& e)
    {
        std::cerr << "multivis: " << e.what() << '\n';
        return 2;
    }

    Shell shell(vis, std::cout);
    if (!macro_file.empty())
        shell.execute(to_string(CommandLine{"/control/execute", {macro_file}}));
    if (batch)
        return shell.error_count() == 0 ? 0 : 1;

    shell.repl(std::cin, true);
    return 0;
}
