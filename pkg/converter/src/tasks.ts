/**
 * Dataset-specific task mappings: how native annotations become the two
 * binary labels the decoder expects. Annotations outside the mapping are
 * dropped.
 */

export type DatasetKind = 'audio_visual' | 'music_reconstruction' | 'ajile12';

export const DATASET_KINDS: DatasetKind[] = ['audio_visual', 'music_reconstruction', 'ajile12'];

const MAPPINGS: Record<DatasetKind, Record<string, string>> = {
    // Speech vs Music
    audio_visual: { speech: 'Speech', music: 'Music' },
    // Singing vs Music
    music_reconstruction: { singing: 'Singing', music: 'Music' },
    // Move vs Rest
    ajile12: { move: 'Move', rest: 'Rest' },
};

export function mapTrialType(kind: DatasetKind, trialType: string): string | null {
    return MAPPINGS[kind][trialType.trim().toLowerCase()] ?? null;
}

/** Small deterministic PRNG for the seeded rest-epoch sampler. */
export function mulberry32(seed: number): () => number {
    let state = seed >>> 0;
    return () => {
        state = (state + 0x6d2b79f5) >>> 0;
        let t = state;
        t = Math.imul(t ^ (t >>> 15), t | 1);
        t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
        return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
    };
}

/**
 * Seeded subsample of the majority "Rest" epochs down to `limit`.
 * The AJILE12 source provides far more rest than movement; which rest
 * epochs enter the container is an explicit, reproducible choice.
 */
export function sampleRestEvents(
    events: Array<[number, string]>,
    limit: number,
    seed: number,
    restLabel = 'Rest',
): Array<[number, string]> {
    const rest = events.filter(([, l]) => l === restLabel);
    if (rest.length <= limit) return [...events];
    const rng = mulberry32(seed);
    const indices = rest.map((_, i) => i);
    for (let i = indices.length - 1; i > 0; i--) {
        const j = Math.floor(rng() * (i + 1));
        [indices[i], indices[j]] = [indices[j], indices[i]];
    }
    const keep = new Set(indices.slice(0, limit));
    let seen = -1;
    return events.filter(([, l]) => {
        if (l !== restLabel) return true;
        seen += 1;
        return keep.has(seen);
    });
}
