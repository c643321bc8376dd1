#ifndef snlab_tools_commands_hpp
#define snlab_tools_commands_hpp

#include "settings.hpp"

#include "snlab/neighborhood.hpp"
#include "snlab/report.hpp"

#include <functional>
#include <string>
#include <vector>

namespace snlab::cli {

struct RunContext {
    CoreOptions core;
    unsigned jobs = 1;
};

struct ParamDef {
    std::string name;
    std::string fallback;
    std::string help;
};

struct CommandDef {
    std::string name;  // "zoo list" for the nested listing command
    std::string help;
    bool uses_space = false;
    std::vector<ParamDef> params;
    std::function<Report(const Settings&, const RunContext&)> run;
};

const std::vector<ParamDef>& space_params();
const std::vector<CommandDef>& command_table();

}

#endif /* snlab_tools_commands_hpp */
