#pragma once

#include "tait/error.hpp"
#include "tait/taylor.hpp"
#include "tait/expr.hpp"
#include "tait/family.hpp"
#include "tait/curves.hpp"
#include "tait/conics.hpp"
#include "tait/oracle.hpp"
#include "tait/osculate.hpp"
#include "tait/transforms.hpp"
#include "tait/render.hpp"
#include "tait/report.hpp"
#include "tait/cli.hpp"
