/**
 * Client-side bundle validation.
 *
 * Deliberately a strict subset of the service's rules: everything the
 * client blocks, the service also blocks (hard rules, same thresholds and
 * word counting), so no action the client allows is later rejected for a
 * reason the client could have caught. Soft service warnings (option
 * length heuristics) are surfaced as warnings and never block.
 */
import type { QABundle } from './types.js';

export const VQA_MAX_WORDS = 5;
export const CAPTION_MIN_WORDS = 30;
export const CAPTION_MAX_WORDS = 40;
export const MCQ_OPTION_COUNT = 4;
export const OPTION_LENGTH_TOLERANCE = 0.5;

export interface RuleVerdict {
  rule: string;
  level: 'pass' | 'hard' | 'soft';
  detail: string;
}

export interface ValidationReport {
  imageId: string;
  verdicts: RuleVerdict[];
  ok: boolean;
  warnings: RuleVerdict[];
}

/** Same normalization as the service: lowercase, strip punctuation,
 * collapse whitespace, then split. */
export function wordCount(text: string): number {
  const norm = text
    .toLowerCase()
    .replace(/[^\p{L}\p{N}_\s]/gu, '')
    .replace(/\s+/g, ' ')
    .trim();
  return norm === '' ? 0 : norm.split(' ').length;
}

export function validateBundle(q: QABundle): ValidationReport {
  const verdicts: RuleVerdict[] = [];

  const nOpts = q.mcq.options.length;
  verdicts.push({
    rule: 'mcq option count',
    level: nOpts === MCQ_OPTION_COUNT ? 'pass' : 'hard',
    detail: `${nOpts} options`,
  });

  const nVqa = wordCount(q.vqa.answer);
  verdicts.push({
    rule: 'vqa answer length',
    level: nVqa >= 1 && nVqa <= VQA_MAX_WORDS ? 'pass' : 'hard',
    detail: `${nVqa} words, limit ${VQA_MAX_WORDS}`,
  });

  const nCap = wordCount(q.cap.caption);
  verdicts.push({
    rule: 'caption length',
    level: nCap >= CAPTION_MIN_WORDS && nCap <= CAPTION_MAX_WORDS ? 'pass' : 'hard',
    detail: `${nCap} words, bounds [${CAPTION_MIN_WORDS}, ${CAPTION_MAX_WORDS}]`,
  });

  const correct = q.mcq.options[q.mcq.correct];
  if (correct !== undefined) {
    const correctLen = correct.length;
    q.mcq.options.forEach((opt, i) => {
      if (i === q.mcq.correct) return;
      const lo = correctLen * (1 - OPTION_LENGTH_TOLERANCE);
      const hi = correctLen * (1 + OPTION_LENGTH_TOLERANCE);
      verdicts.push({
        rule: `option ${i} length`,
        level: opt.length >= lo && opt.length <= hi ? 'pass' : 'soft',
        detail: `${opt.length} chars vs correct ${correctLen}`,
      });
    });
  }

  const hard = verdicts.filter((v) => v.level === 'hard');
  return {
    imageId: q.image_id,
    verdicts,
    ok: hard.length === 0,
    warnings: verdicts.filter((v) => v.level === 'soft'),
  };
}
