/**
 * CLI: convert a public-dataset layout into containers.
 *
 *   node dist/cli.js --kind ajile12 --root path/to/source --out outdir \
 *       [--participants sub-01,sub-02] [--rest-limit N --rest-seed S]
 */
import { convert, SourceDescriptor } from './convert.js';
import { DATASET_KINDS, DatasetKind } from './tasks.js';
import { validateContainerDir } from './validate.js';

function parseArgs(argv: string[]): { descriptor: SourceDescriptor; out: string } {
    const args = new Map<string, string>();
    for (let i = 0; i < argv.length; i += 2) {
        if (!argv[i].startsWith('--') || argv[i + 1] === undefined) {
            throw new Error(`bad argument pair near '${argv[i]}'`);
        }
        args.set(argv[i].slice(2), argv[i + 1]);
    }
    const kind = args.get('kind') as DatasetKind | undefined;
    const root = args.get('root');
    const out = args.get('out');
    if (!kind || !DATASET_KINDS.includes(kind)) {
        throw new Error(`--kind must be one of ${DATASET_KINDS.join(', ')}`);
    }
    if (!root || !out) throw new Error('--root and --out are required');
    const descriptor: SourceDescriptor = { kind, root };
    if (args.has('participants')) descriptor.participants = args.get('participants')!.split(',');
    if (args.has('rest-limit')) descriptor.restLimit = Number(args.get('rest-limit'));
    if (args.has('rest-seed')) descriptor.restSeed = Number(args.get('rest-seed'));
    return { descriptor, out };
}

export async function main(argv: string[]): Promise<number> {
    let parsed;
    try {
        parsed = parseArgs(argv);
    } catch (err) {
        console.error((err as Error).message);
        return 2;
    }
    const outcomes = await convert(parsed.descriptor, parsed.out);
    let failures = 0;
    for (const o of outcomes) {
        if (o.error) {
            failures += 1;
            console.error(`${o.participant}: FAILED (${o.error})`);
            continue;
        }
        const violations = validateContainerDir(o.outDir!);
        if (violations.length > 0) {
            failures += 1;
            console.error(`${o.participant}: container invalid: ${violations.join('; ')}`);
        } else {
            console.log(`${o.participant}: ${o.outDir}`);
        }
    }
    return failures === 0 ? 0 : 1;
}

const invokedDirectly = process.argv[1]?.endsWith('cli.js');
if (invokedDirectly) {
    main(process.argv.slice(2)).then((code) => process.exit(code));
}
