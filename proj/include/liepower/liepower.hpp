#pragma once

#include "liepower/case_table.hpp"
#include "liepower/verify.hpp"
