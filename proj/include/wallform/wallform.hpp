#pragma once

/** @file wallform.hpp
 *  @brief Umbrella header.
 */

#include "wallform/matrix.hpp"
#include "wallform/smith.hpp"
#include "wallform/abelian_group.hpp"
#include "wallform/hpair.hpp"
#include "wallform/wall_form.hpp"
#include "wallform/sampling.hpp"
#include "wallform/morphism.hpp"
#include "wallform/complement.hpp"
#include "wallform/duality.hpp"
#include "wallform/rank.hpp"
#include "wallform/lemmas.hpp"
#include "wallform/complex.hpp"
#include "wallform/homology.hpp"
#include "wallform/l_complex.hpp"
#include "wallform/json_io.hpp"
#include "wallform/cli.hpp"
