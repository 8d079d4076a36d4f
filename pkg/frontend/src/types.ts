// Wire shapes of the annotation service's JSON API.

export type LexicalType = "noun" | "verb" | "adjective" | "adverb";

export interface PictureDescriptor {
  name: string;
  category: string;
  ordinal: number;
  total: number;
}

export interface SynsetInfo {
  id: string;
  lexical_type: LexicalType;
  name: string;
  lemmas: string[];
  gloss: string;
}

export interface SearchGroup {
  lexical_type: LexicalType;
  synsets: SynsetInfo[];
}

export interface SearchPage {
  query: string;
  groups: SearchGroup[];
  truncated: boolean;
  total_matches: number;
}

export interface AnnotationEntry {
  synset: SynsetInfo;
  created_at: string;
}

export interface ListingGroup {
  lexical_type: LexicalType;
  annotations: AnnotationEntry[];
}

export interface AnnotationListing {
  picture: string;
  groups: ListingGroup[];
  dangling: string[];
}

export interface CreatedAnnotation {
  picture: string;
  synset: string;
  created_at: string;
}
