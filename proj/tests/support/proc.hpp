#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

// Helpers for exercising the installed CLI binary from tests. The binary
// path comes from the STRONGDEPS_BIN environment variable (set by ctest).
namespace testsupport {

struct ProcResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

inline std::string cli_binary() {
    const char* bin = std::getenv("STRONGDEPS_BIN");
    return bin ? bin : "";
}

inline std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') out += "'\\''";
        else out += c;
    }
    return out + "'";
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline ProcResult run_cli(const std::vector<std::string>& args,
                          const std::string& stdin_data = "") {
    ProcResult res;
    std::string base = "/tmp/strongdeps_test_" + std::to_string(getpid()) + "_" +
                       std::to_string(counter()++);
    std::string out_path = base + ".out";
    std::string err_path = base + ".err";
    std::string in_path = base + ".in";
    {
        std::ofstream in(in_path, std::ios::binary);
        in << stdin_data;
    }
    std::string cmd = shell_quote(cli_binary());
    for (const auto& a : args) cmd += " " + shell_quote(a);
    cmd += " < " + shell_quote(in_path) + " > " + shell_quote(out_path) +
           " 2> " + shell_quote(err_path);
    int status = std::system(cmd.c_str());
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    res.out = slurp(out_path);
    res.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    std::remove(in_path.c_str());
    return res;
}

inline int& counter() {
    static int c = 0;
    return c;
}

}  // namespace testsupport
