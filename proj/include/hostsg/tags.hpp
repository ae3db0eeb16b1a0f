#pragma once

#include <string>
#include <unordered_set>

#include "hostsg/errors.hpp"

namespace hostsg {

enum class NodeKind { StaticObj, DynamicObj, Predicate, Argument };

inline const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::StaticObj: return "static";
    case NodeKind::DynamicObj: return "dynamic";
    case NodeKind::Predicate: return "predicate";
    case NodeKind::Argument: return "argument";
  }
  return "?";
}

// Static/dynamic object label tables used when compressing a clip's DSG.
inline const std::unordered_set<std::string>& static_tags() {
  static const std::unordered_set<std::string> t{
      "bed", "bag", "banana", "basket", "beach", "bench", "board", "bottle",
      "bowl", "box", "branch", "building", "cabinet", "chair", "clock",
      "counter", "cup", "curtain", "desk", "door", "drawer", "fence", "flag",
      "flower", "food", "fork", "fruit", "glass", "handle", "hill", "house",
      "lamp", "laptop", "leaf", "letter", "light", "logo", "mountain",
      "number", "orange", "paper", "phone", "pillow", "pizza", "plant",
      "plate", "pole", "post", "pot", "racket", "railing", "rock", "roof",
      "room", "screen", "seat", "shelf", "sidewalk", "sign", "sink",
      "skateboard", "ski", "snow", "stand", "street", "surfboard", "table",
      "tile", "tire", "toilet", "towel", "tower", "track", "tree", "trunk",
      "umbrella", "vase", "vegetable", "window", "windshield", "wire"};
  return t;
}

inline const std::unordered_set<std::string>& dynamic_tags() {
  static const std::unordered_set<std::string> t{
      "airplane", "arm", "animal", "bear", "bird", "bike", "boat", "boot",
      "boy", "bus", "cap", "car", "cat", "child", "coat", "cow", "dog", "ear",
      "elephant", "engine", "eye", "face", "finger", "girl", "giraffe",
      "glove", "guy", "hair", "hand", "hat", "head", "helmet", "horse",
      "jacket", "jean", "kid", "kite", "lady", "leg", "man", "men",
      "motorcycle", "mouth", "neck", "nose", "pant", "paw", "people",
      "person", "plane", "player", "sheep", "shirt", "shoe", "short", "skier",
      "sneaker", "sock", "tail", "tie", "train", "truck", "vehicle", "wave",
      "wheel", "wing", "woman", "zebra"};
  return t;
}

// Labels outside both tables fall back to the configured default; dynamic by
// default so temporal identity is never silently dropped.
inline NodeKind classify_node(const std::string& tag,
                              NodeKind unknown_default = NodeKind::DynamicObj) {
  if (tag.empty()) throw DataError("classify_node: empty tag");
  if (static_tags().count(tag)) return NodeKind::StaticObj;
  if (dynamic_tags().count(tag)) return NodeKind::DynamicObj;
  return unknown_default;
}

}  // namespace hostsg
