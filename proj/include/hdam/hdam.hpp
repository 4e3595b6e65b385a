#pragma once

#include "hdam/dot.hpp"
#include "hdam/error.hpp"
#include "hdam/expr.hpp"
#include "hdam/hda.hpp"
#include "hdam/io_json.hpp"
#include "hdam/label.hpp"
#include "hdam/lts.hpp"
#include "hdam/model.hpp"
#include "hdam/pcs.hpp"
#include "hdam/progg.hpp"
