#include "storyline/story.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace storyline {

const char* component_name(Component c) {
  switch (c) {
    case Component::Who: return "who";
    case Component::Where: return "where";
    case Component::What: return "what";
    case Component::Face: return "face";
    case Component::Obj: return "obj";
  }
  throw std::invalid_argument("bad component");
}

const char* joint_tag_name(JointTag t) {
  switch (t) {
    case JointTag::FaceWho: return "face_who";
    case JointTag::FaceWhat: return "face_what";
    case JointTag::ObjWhat: return "obj_what";
  }
  throw std::invalid_argument("bad joint tag");
}

bool joint_tag_from_name(const std::string& name, JointTag* out) {
  if (name == "face_who") { *out = JointTag::FaceWho; return true; }
  if (name == "face_what") { *out = JointTag::FaceWhat; return true; }
  if (name == "obj_what") { *out = JointTag::ObjWhat; return true; }
  return false;
}

const std::vector<std::string>& Story::component(Component c) const {
  switch (c) {
    case Component::Who: return who;
    case Component::Where: return where;
    case Component::What: return what;
    case Component::Face: return face;
    case Component::Obj: return obj;
  }
  throw std::invalid_argument("bad component");
}

std::vector<std::string>& Story::component(Component c) {
  return const_cast<std::vector<std::string>&>(
      static_cast<const Story&>(*this).component(c));
}

namespace {

bool contains(const std::vector<std::string>& v, const std::string& w) {
  return std::find(v.begin(), v.end(), w) != v.end();
}

bool in_text(const Story& s, const std::string& w) {
  return contains(s.who, w) || contains(s.where, w) || contains(s.what, w);
}

}  // namespace

void validate_story(const Story& story) {
  if (story.id.empty()) throw std::invalid_argument("story id is empty");
  for (const auto& [a, b] : story.tt_pairs) {
    if (!in_text(story, a) || !in_text(story, b))
      throw std::invalid_argument("story " + story.id +
                                  ": tt pair references a missing text word");
  }
  for (const auto& [f, o] : story.ii_pairs) {
    if (!contains(story.face, f) || !contains(story.obj, o))
      throw std::invalid_argument("story " + story.id +
                                  ": ii pair references a missing visual word");
  }
  for (const auto& jp : story.joint_pairs) {
    const bool text_ok = jp.tag == JointTag::FaceWho
                             ? contains(story.who, jp.text_word)
                             : contains(story.what, jp.text_word);
    const bool vis_ok = jp.tag == JointTag::ObjWhat
                            ? contains(story.obj, jp.visual_word)
                            : contains(story.face, jp.visual_word);
    if (!text_ok || !vis_ok)
      throw std::invalid_argument("story " + story.id +
                                  ": joint pair references a missing word");
  }
}

void validate_corpus(const Corpus& corpus) {
  std::unordered_set<std::string> seen;
  for (const Story& s : corpus) {
    validate_story(s);
    if (!seen.insert(s.id).second)
      throw std::invalid_argument("duplicate story id " + s.id);
  }
}

}  // namespace storyline
