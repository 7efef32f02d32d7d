#pragma once

#include <string>
#include <vector>

namespace logsyn {

struct CheckItem {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Report {
    bool pass = true;
    std::vector<CheckItem> items;

    void add(std::string name, bool ok, std::string detail = "") {
        pass = pass && ok;
        items.push_back({std::move(name), ok, std::move(detail)});
    }
};

}  // namespace logsyn
