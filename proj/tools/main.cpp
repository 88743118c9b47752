// Copyright 2026 The qfock Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "app.hpp"

int main(int argc, char** argv) {
    return qfock::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
