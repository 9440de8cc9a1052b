/** Case-insensitive prefix suggestions over the keyword vocabulary,
 * ranked by document frequency (ties lexicographic). */

export interface VocabularyEntry {
  keyword: string;
  document_frequency: number;
}

export function autocomplete(
  prefix: string,
  vocabulary: VocabularyEntry[],
  limit = 10,
): string[] {
  const needle = prefix.trim().toLowerCase();
  if (!needle) {
    return [];
  }
  const seen = new Set<string>();
  const matches: VocabularyEntry[] = [];
  for (const entry of vocabulary) {
    const keyword = entry.keyword;
    if (keyword.toLowerCase().startsWith(needle) && !seen.has(keyword)) {
      seen.add(keyword);
      matches.push(entry);
    }
  }
  matches.sort(
    (a, b) =>
      b.document_frequency - a.document_frequency ||
      (a.keyword < b.keyword ? -1 : a.keyword > b.keyword ? 1 : 0),
  );
  return matches.slice(0, limit).map((e) => e.keyword);
}
