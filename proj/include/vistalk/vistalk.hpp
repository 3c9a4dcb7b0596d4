// Umbrella header.
#pragma once

#include "vistalk/core.hpp"
#include "vistalk/image_schemas.hpp"
#include "vistalk/io.hpp"
#include "vistalk/motion.hpp"
#include "vistalk/narrative.hpp"
#include "vistalk/nlg/grammar.hpp"
#include "vistalk/nlg/ids.hpp"
#include "vistalk/nlg/lexicon.hpp"
#include "vistalk/nlg/realize.hpp"
#include "vistalk/nlg/syntax.hpp"
#include "vistalk/scene.hpp"
#include "vistalk/spatial.hpp"
#include "vistalk/store.hpp"
#include "vistalk/temporal.hpp"
